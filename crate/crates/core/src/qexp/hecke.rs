//! Hecke operators, the level-raising substitution, the diamond scalar, the
//! Sturm bound, and eigensystem verification.

use super::{QExpError, QExpansion};
use crate::arith;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn power_scalar(q: u64, exp: u64, modulus: Option<u64>) -> BigRational {
    match modulus {
        Some(p) => BigRational::from_integer(BigInt::from(arith::powmod(q as i64, exp, p))),
        None => BigRational::from_integer(BigInt::from(q).pow(exp as u32)),
    }
}

/// The Hecke operator T_q for a prime q not dividing the level:
/// `a_n(T_q f) = a_{nq}(f) + q^(k-1) a_{n/q}(f)` (second term only when
/// q divides n). The reliable precision drops to floor(P/q).
pub fn hecke_t(q: u64, f: &QExpansion) -> Result<QExpansion, QExpError> {
    if !arith::is_prime(q) {
        return Err(QExpError::NotAPrime(q));
    }
    if f.level().is_multiple_of(q) {
        return Err(QExpError::UseHeckeU { q });
    }
    if f.weight() == 0 {
        return Err(QExpError::WeightTooSmall {
            op: "T",
            weight: 0,
        });
    }
    let scale = power_scalar(q, f.weight() - 1, f.modulus());
    let out_precision = f.precision() / q as usize;
    let mut coeffs = Vec::with_capacity(out_precision + 1);
    for n in 0..=out_precision {
        let mut c = f.coeffs[n * q as usize].clone();
        if n % q as usize == 0 {
            c += &scale * &f.coeffs[n / q as usize];
        }
        coeffs.push(c);
    }
    let mut out = QExpansion {
        coeffs,
        weight: f.weight(),
        level: f.level(),
        modulus: f.modulus(),
    };
    out.normalize_in_place();
    Ok(out)
}

/// The operator U_l for a prime l dividing the level: `a_n -> a_{nl}`.
/// The reliable precision drops to floor(P/l).
pub fn hecke_u(ell: u64, f: &QExpansion) -> Result<QExpansion, QExpError> {
    if !arith::is_prime(ell) {
        return Err(QExpError::NotAPrime(ell));
    }
    if !f.level().is_multiple_of(ell) {
        return Err(QExpError::UseHeckeT { q: ell });
    }
    let out_precision = f.precision() / ell as usize;
    let coeffs = (0..=out_precision)
        .map(|n| f.coeffs[n * ell as usize].clone())
        .collect();
    Ok(QExpansion {
        coeffs,
        weight: f.weight(),
        level: f.level(),
        modulus: f.modulus(),
    })
}

/// The substitution q -> q^l (the level-raising map V_l). A coefficient of
/// the output at index m comes from index m/l of the input, so the input's
/// precision P supports any output precision up to l*P.
pub fn v_map(ell: u64, f: &QExpansion, precision: usize) -> Result<QExpansion, QExpError> {
    assert!(ell >= 1);
    let max = f
        .precision().saturating_mul(ell as usize);
    if precision > max {
        return Err(QExpError::PrecisionShortfall {
            required: precision.div_ceil(ell as usize),
            available: f.precision(),
        });
    }
    let mut coeffs = vec![BigRational::zero(); precision + 1];
    for m in (0..=precision).step_by(ell as usize) {
        coeffs[m] = f.coeffs[m / ell as usize].clone();
    }
    Ok(QExpansion {
        coeffs,
        weight: f.weight(),
        level: f.level() * ell,
        modulus: f.modulus(),
    })
}

/// The diamond operator S_q with trivial nebentypus: multiplication by the
/// scalar q^(k-2).
pub fn diamond_s(q: u64, f: &QExpansion) -> Result<QExpansion, QExpError> {
    if !arith::is_prime(q) {
        return Err(QExpError::NotAPrime(q));
    }
    if f.level().is_multiple_of(q) {
        return Err(QExpError::UseHeckeU { q });
    }
    if f.weight() < 2 {
        return Err(QExpError::WeightTooSmall {
            op: "S",
            weight: f.weight(),
        });
    }
    let scalar = power_scalar(q, f.weight() - 2, f.modulus());
    f.scalar_mul(&scalar)
}

fn squarefree_prime_factors(mut m: u64) -> Result<Vec<u64>, QExpError> {
    let original = m;
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return Err(QExpError::LevelNotSquarefree(original));
            }
            factors.push(d);
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    Ok(factors)
}

/// The Sturm bound floor(k * [SL_2(Z) : Gamma_0(M)] / 12) for squarefree M:
/// two forms of weight k and level M agreeing coefficientwise up to this
/// index are equal.
pub fn sturm_bound(weight: u64, level: u64) -> Result<u64, QExpError> {
    let index: u64 = squarefree_prime_factors(level)?
        .iter()
        .map(|q| q + 1)
        .product();
    Ok(weight * index / 12)
}

/// Tag for an operator in an eigensystem verification request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorTag {
    T(u64),
    U(u64),
}

impl std::fmt::Display for OperatorTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OperatorTag::T(q) => write!(f, "T_{q}"),
            OperatorTag::U(q) => write!(f, "U_{q}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorCheck {
    pub op: OperatorTag,
    pub expected: u64,
    pub pass: bool,
    /// Index of the first coefficient where `op(f)` differs from
    /// `expected * f`, when the check fails.
    pub first_discrepancy: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigensystemReport {
    pub checks: Vec<OperatorCheck>,
    pub sturm: u64,
    pub up_to: usize,
    /// All operators pass and the verified range covers the Sturm bound.
    pub pass: bool,
}

/// Verify that f is a simultaneous eigenvector mod p: for each (op, r) in
/// `expected`, check `op(f) = r f` coefficientwise for indices up to
/// `up_to`. The overall verdict also requires `up_to` to reach the Sturm
/// bound of (weight, level), which makes agreement a proof of equality.
pub fn verify_eigensystem(
    f: &QExpansion,
    expected: &[(OperatorTag, u64)],
    up_to: usize,
) -> Result<EigensystemReport, QExpError> {
    let p = f.modulus().ok_or(QExpError::ModulusRequired)?;
    if f.is_zero() {
        return Err(QExpError::ZeroSeries);
    }
    let mut checks = Vec::with_capacity(expected.len());
    let mut all_pass = true;
    for &(op, eigenvalue) in expected {
        let (image, factor) = match op {
            OperatorTag::T(q) => (hecke_t(q, f)?, q),
            OperatorTag::U(q) => (hecke_u(q, f)?, q),
        };
        if image.precision() < up_to {
            return Err(QExpError::PrecisionShortfall {
                required: up_to * factor as usize,
                available: f.precision(),
            });
        }
        let scaled = f.scalar_mul(&BigRational::from_integer(BigInt::from(eigenvalue % p)))?;
        let mut first_discrepancy = None;
        for n in 0..=up_to {
            if image.coeffs[n] != scaled.coeffs[n] {
                first_discrepancy = Some(n);
                break;
            }
        }
        let pass = first_discrepancy.is_none();
        all_pass &= pass;
        checks.push(OperatorCheck {
            op,
            expected: eigenvalue % p,
            pass,
            first_discrepancy,
        });
    }
    let sturm = sturm_bound(f.weight(), f.level())?;
    Ok(EigensystemReport {
        pass: all_pass && up_to as u64 >= sturm,
        checks,
        sturm,
        up_to,
    })
}
