//! Truncated q-expansion arithmetic over exact rationals and over F_p.
//!
//! A [`QExpansion`] stores the coefficients a_0..a_P of a modular form
//! together with its weight, level, and an optional coefficient modulus.
//! P is the *reliable precision*: every stored coefficient is exact, and no
//! operation ever reads an input coefficient beyond the input's precision.
//! Hecke operators shrink the precision accordingly (T_q maps precision P
//! to floor(P/q)).
//!
//! Constructors cover the series this crate certifies: Eisenstein series,
//! the discriminant cusp form, and the weight-(p-1) difference series
//! attached to a ramified prime, in both its exact-rational defining form
//! and the cancelled mod-p form.

mod hecke;
mod io;

pub use hecke::{
    diamond_s, hecke_t, hecke_u, sturm_bound, v_map, verify_eigensystem, EigensystemReport,
    OperatorCheck, OperatorTag,
};
pub use io::{export_text, import_text};

use crate::arith;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum QExpError {
    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: u64, right: u64 },
    #[error("coefficient modulus mismatch")]
    ModulusMismatch,
    #[error("operation requires mod-p coefficients but the series is rational")]
    ModulusRequired,
    #[error("denominator not invertible mod {p}")]
    DenominatorNotInvertible { p: u64 },
    #[error("Eisenstein weight must be even and >= 4, got {0}")]
    EisensteinWeight(u64),
    #[error("precision {available} too small, need at least {required}")]
    PrecisionTooSmall { required: usize, available: usize },
    #[error("precision shortfall: need input precision {required}, have {available}")]
    PrecisionShortfall { required: usize, available: usize },
    #[error("q = {q} divides the level; use the U operator instead")]
    UseHeckeU { q: u64 },
    #[error("l = {q} is coprime to the level; use the T operator instead")]
    UseHeckeT { q: u64 },
    #[error("level {0} is not squarefree")]
    LevelNotSquarefree(u64),
    #[error("the zero series is not a valid eigenvector")]
    ZeroSeries,
    #[error("{0} is not prime")]
    NotAPrime(u64),
    #[error("l must differ from p = {0}")]
    EllEqualsP(u64),
    #[error("weight {weight} too small for {op}")]
    WeightTooSmall { op: &'static str, weight: u64 },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Arith(#[from] arith::ArithError),
}

/// Truncated q-series with weight, level, reliable precision, and an
/// optional coefficient modulus. With a modulus p, every coefficient is an
/// integer in [0, p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExpansion {
    coeffs: Vec<BigRational>,
    weight: u64,
    level: u64,
    modulus: Option<u64>,
}

fn residue_of(r: &BigRational, p: u64) -> Result<u64, QExpError> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb);
    if den.is_zero() {
        return Err(QExpError::DenominatorNotInvertible { p });
    }
    let num = r.numer().mod_floor(&pb).to_u64().expect("residue fits in u64");
    let den = den.to_u64().expect("residue fits in u64");
    Ok(((num as u128 * arith::invmod(den, p) as u128) % p as u128) as u64)
}

impl QExpansion {
    /// Build a series from exact rational coefficients.
    pub fn from_rational_coeffs(coeffs: Vec<BigRational>, weight: u64, level: u64) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least a_0");
        assert!(level >= 1, "level is positive");
        QExpansion {
            coeffs,
            weight,
            level,
            modulus: None,
        }
    }

    /// Build a mod-p series from residues.
    pub fn from_residues(residues: Vec<u64>, weight: u64, level: u64, p: u64) -> Self {
        assert!(!residues.is_empty());
        assert!(level >= 1);
        let coeffs = residues
            .into_iter()
            .map(|r| BigRational::from_integer(BigInt::from(r % p)))
            .collect();
        QExpansion {
            coeffs,
            weight,
            level,
            modulus: Some(p),
        }
    }

    pub fn zero(weight: u64, level: u64, precision: usize, modulus: Option<u64>) -> Self {
        QExpansion {
            coeffs: vec![BigRational::zero(); precision + 1],
            weight,
            level,
            modulus,
        }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    /// Coefficient a_n, or None beyond the reliable precision.
    pub fn coeff(&self, n: usize) -> Option<&BigRational> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient a_n as a residue; requires a modulus.
    pub fn residue(&self, n: usize) -> Option<u64> {
        self.modulus?;
        self.coeffs.get(n).map(|c| c.to_integer().to_u64().expect("normalized residue"))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Drop coefficients beyond `precision`.
    pub fn truncate(&self, precision: usize) -> Result<QExpansion, QExpError> {
        if precision > self.precision() {
            return Err(QExpError::PrecisionShortfall {
                required: precision,
                available: self.precision(),
            });
        }
        let mut out = self.clone();
        out.coeffs.truncate(precision + 1);
        Ok(out)
    }

    /// Reduce a rational series coefficientwise mod p. Fails if any
    /// denominator is divisible by p.
    pub fn reduce_mod(&self, p: u64) -> Result<QExpansion, QExpError> {
        if !arith::is_prime(p) {
            return Err(QExpError::NotAPrime(p));
        }
        if self.modulus == Some(p) {
            return Ok(self.clone());
        }
        if self.modulus.is_some() {
            return Err(QExpError::ModulusMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| residue_of(c, p).map(|r| BigRational::from_integer(BigInt::from(r))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QExpansion {
            coeffs,
            weight: self.weight,
            level: self.level,
            modulus: Some(p),
        })
    }

    fn normalize_in_place(&mut self) {
        if let Some(p) = self.modulus {
            let pb = BigInt::from(p);
            for c in &mut self.coeffs {
                debug_assert!(c.is_integer());
                let r = c.numer().mod_floor(&pb);
                *c = BigRational::from_integer(r);
            }
        }
    }

    fn check_compatible(&self, other: &QExpansion) -> Result<(), QExpError> {
        if self.modulus != other.modulus {
            return Err(QExpError::ModulusMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &QExpansion) -> Result<QExpansion, QExpError> {
        self.check_compatible(other)?;
        if self.weight != other.weight {
            return Err(QExpError::WeightMismatch {
                left: self.weight,
                right: other.weight,
            });
        }
        let precision = self.precision().min(other.precision());
        let coeffs = (0..=precision)
            .map(|n| &self.coeffs[n] + &other.coeffs[n])
            .collect();
        let mut out = QExpansion {
            coeffs,
            weight: self.weight,
            level: self.level.lcm(&other.level),
            modulus: self.modulus,
        };
        out.normalize_in_place();
        Ok(out)
    }

    pub fn sub(&self, other: &QExpansion) -> Result<QExpansion, QExpError> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> QExpansion {
        let mut out = QExpansion {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            weight: self.weight,
            level: self.level,
            modulus: self.modulus,
        };
        out.normalize_in_place();
        out
    }

    /// Product of truncated series; weights add, levels take an lcm, and the
    /// precision is the minimum of the two inputs.
    pub fn mul(&self, other: &QExpansion) -> Result<QExpansion, QExpError> {
        self.check_compatible(other)?;
        let precision = self.precision().min(other.precision());
        let mut coeffs = vec![BigRational::zero(); precision + 1];
        for i in 0..=precision {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(precision - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        let mut out = QExpansion {
            coeffs,
            weight: self.weight + other.weight,
            level: self.level.lcm(&other.level),
            modulus: self.modulus,
        };
        out.normalize_in_place();
        Ok(out)
    }

    pub fn scalar_mul(&self, scalar: &BigRational) -> Result<QExpansion, QExpError> {
        let scalar = match self.modulus {
            Some(p) => BigRational::from_integer(BigInt::from(residue_of(scalar, p)?)),
            None => scalar.clone(),
        };
        let mut out = QExpansion {
            coeffs: self.coeffs.iter().map(|c| c * &scalar).collect(),
            weight: self.weight,
            level: self.level,
            modulus: self.modulus,
        };
        out.normalize_in_place();
        Ok(out)
    }
}

/// Divisor power sum: sum of d^k over the divisors d of n.
pub fn sigma(k: u32, n: u64) -> BigUint {
    assert!(n >= 1, "sigma needs n >= 1");
    let mut total = BigUint::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigUint::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigUint::from(e).pow(k);
            }
        }
        d += 1;
    }
    total
}

/// The normalized Eisenstein series of even weight k >= 4 and level 1:
/// `1 - (2k/B_k) * sum_{n>=1} sigma_{k-1}(n) q^n`, over exact rationals.
pub fn eisenstein(k: u64, precision: usize) -> Result<QExpansion, QExpError> {
    if k < 4 || !k.is_multiple_of(2) {
        return Err(QExpError::EisensteinWeight(k));
    }
    let bk = arith::bernoulli(k)?;
    let factor = -BigRational::from_integer(BigInt::from(2 * k)) / bk.value;
    let mut coeffs = Vec::with_capacity(precision + 1);
    coeffs.push(BigRational::one());
    for n in 1..=precision as u64 {
        let s = BigInt::from(sigma(k as u32 - 1, n));
        coeffs.push(&factor * BigRational::from_integer(s));
    }
    Ok(QExpansion::from_rational_coeffs(coeffs, k, 1))
}

/// Truncated product of (1 - q^n) over n >= 1, by Euler's pentagonal-number
/// expansion: the only nonzero coefficients sit at the generalized
/// pentagonal numbers j(3j-1)/2 with sign (-1)^j.
fn euler_product(precision: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); precision + 1];
    coeffs[0] = BigInt::one();
    let mut j = 1i64;
    loop {
        let g1 = j * (3 * j - 1) / 2;
        let g2 = j * (3 * j + 1) / 2;
        if g1 as usize > precision && g2 as usize > precision {
            break;
        }
        let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        if (g1 as usize) <= precision {
            coeffs[g1 as usize] = sign.clone();
        }
        if (g2 as usize) <= precision {
            coeffs[g2 as usize] = sign;
        }
        j += 1;
    }
    coeffs
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], precision: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); precision + 1];
    for (i, ai) in a.iter().enumerate().take(precision + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(precision + 1 - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// The discriminant cusp form q prod (1-q^n)^24 of weight 12 and level 1,
/// over exact integers. The 24th power is taken by binary exponentiation of
/// the truncated pentagonal expansion.
pub fn delta(precision: usize) -> Result<QExpansion, QExpError> {
    if precision < 2 {
        return Err(QExpError::PrecisionTooSmall {
            required: 2,
            available: precision,
        });
    }
    let inner = precision - 1;
    let base = euler_product(inner);
    let mut acc: Vec<BigInt> = vec![BigInt::one()];
    acc.resize(inner + 1, BigInt::zero());
    let mut sq = base;
    let mut e = 24u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_trunc(&acc, &sq, inner);
        }
        e >>= 1;
        if e > 0 {
            sq = mul_trunc(&sq, &sq, inner);
        }
    }
    let mut coeffs = Vec::with_capacity(precision + 1);
    coeffs.push(BigRational::zero());
    for c in acc {
        coeffs.push(BigRational::from_integer(c));
    }
    coeffs.truncate(precision + 1);
    Ok(QExpansion::from_rational_coeffs(coeffs, 12, 1))
}

fn check_f_ell_args(p: u64, ell: u64) -> Result<(), QExpError> {
    if p < 3 || !arith::is_prime(p) {
        return Err(QExpError::NotAPrime(p));
    }
    if !arith::is_prime(ell) {
        return Err(QExpError::NotAPrime(ell));
    }
    if ell == p {
        return Err(QExpError::EllEqualsP(p));
    }
    Ok(())
}

/// The mod-p difference series of weight p-1 and level l, computed by the
/// cancelled closed form `(1/2) sum_{n>=1} sigma_{p-2}(n) (q^n - q^(l n))`.
///
/// The scalar in the defining formula (see [`f_ell_rational`]) multiplies
/// out against the Eisenstein coefficient to exactly 1/2, which is
/// p-integral; this form therefore reduces termwise.
pub fn f_ell(p: u64, ell: u64, precision: usize) -> Result<QExpansion, QExpError> {
    check_f_ell_args(p, ell)?;
    let inv2 = arith::invmod(2, p);
    let mut residues = vec![0u64; precision + 1];
    for n in 1..=precision as u64 {
        let s = (sigma(p as u32 - 2, n) % BigUint::from(p)).to_u64().unwrap();
        let mut v = s * inv2 % p;
        if n % ell == 0 {
            let s_sub = (sigma(p as u32 - 2, n / ell) % BigUint::from(p)).to_u64().unwrap();
            v = (v + p - s_sub * inv2 % p) % p;
        }
        residues[n as usize] = v;
    }
    Ok(QExpansion::from_residues(residues, p - 1, ell, p))
}

/// The same series by its exact-rational defining formula,
/// `(-B_{p-1} / 4(p-1)) * (E_{p-1}(q) - E_{p-1}(q^l))`, kept as a rational
/// series. Reducing this mod p must agree with [`f_ell`]; the pair gives a
/// two-route cross-check.
pub fn f_ell_rational(p: u64, ell: u64, precision: usize) -> Result<QExpansion, QExpError> {
    check_f_ell_args(p, ell)?;
    let e = eisenstein(p - 1, precision)?;
    let e_sub = v_map(ell, &e, precision)?;
    let diff = e.sub(&e_sub)?;
    let b = arith::bernoulli(p - 1)?;
    let scalar = -b.value / BigRational::from_integer(BigInt::from(4 * (p - 1)));
    diff.scalar_mul(&scalar)
}

/// The theta operator a_n -> n a_n on a mod-p series. Raises the weight by
/// p + 1 and keeps the reliable precision.
pub fn theta(f: &QExpansion) -> Result<QExpansion, QExpError> {
    let p = f.modulus.ok_or(QExpError::ModulusRequired)?;
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c * BigRational::from_integer(BigInt::from(n as u64 % p)))
        .collect();
    let mut out = QExpansion {
        coeffs,
        weight: f.weight + p + 1,
        level: f.level,
        modulus: f.modulus,
    };
    out.normalize_in_place();
    Ok(out)
}
