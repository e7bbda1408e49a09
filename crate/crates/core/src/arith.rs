//! Exact integer, rational, and modular arithmetic.
//!
//! Deterministic primality for the full `u64` range, square-and-multiply
//! modular exponentiation, the topological-generator test for `1 + pZ_p`,
//! and Bernoulli numbers as exact reduced rationals. Bernoulli numbers are
//! computed by two independent algorithms so they can cross-check each
//! other; the von Staudt–Clausen theorem pins the denominators exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Largest supported Bernoulli index. Every criterion in scope needs at
/// most B_{p-1} for p ≤ 17, so 64 leaves a wide margin.
pub const MAX_BERNOULLI_INDEX: u64 = 64;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ArithError {
    #[error("Bernoulli index {0} exceeds the supported bound {MAX_BERNOULLI_INDEX}")]
    BernoulliIndexTooLarge(u64),
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("{0} is not prime")]
    NotAPrime(u64),
    #[error("l = p = {0} is excluded: l must not divide p")]
    EllEqualsP(u64),
    #[error("p = {0} is too large for this computation")]
    PrimeTooLarge(u64),
    #[error("character exponent must be odd, got {0}")]
    EvenCharacterExponent(i64),
    #[error("character exponent {a} must satisfy 1 <= a <= {max}")]
    ExponentOutOfRange { a: i64, max: u64 },
    #[error("N = {n} must be coprime to p = {p}")]
    LevelNotCoprime { n: u64, p: u64 },
    #[error("l = {ell} must not divide Np = {np}")]
    EllDividesLevel { ell: u64, np: u64 },
}

/// Modular multiplication without overflow.
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod modulus` by square-and-multiply.
///
/// The base may be negative; the result is always in `[0, modulus)`.
pub fn powmod(base: i64, exp: u64, modulus: u64) -> u64 {
    assert!(modulus >= 1, "modulus must be positive");
    if modulus == 1 {
        return 0;
    }
    let mut b = base.rem_euclid(modulus as i64) as u64;
    let mut e = exp;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, modulus);
        }
        b = mulmod(b, b, modulus);
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse mod an odd prime p.
pub fn invmod(x: u64, p: u64) -> u64 {
    debug_assert!(!x.is_multiple_of(p));
    powmod((x % p) as i64, p - 2, p)
}

/// Deterministic Miller–Rabin, valid for all n < 2^64 with this witness set.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = powmod(a as i64, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn check_odd_prime(p: u64) -> Result<(), ArithError> {
    if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
        return Err(ArithError::NotAnOddPrime(p));
    }
    Ok(())
}

/// True iff `l / l~` is a topological generator of `1 + pZ_p`, where `l~`
/// is the Teichmüller lift of `l mod p`. Equivalently: p² does not divide
/// `l^(p-1) - 1`, which is what is actually computed (purely rational
/// arithmetic, no Teichmüller lift is ever constructed).
pub fn is_one_plus_p_generator(ell: u64, p: u64) -> Result<bool, ArithError> {
    check_odd_prime(p)?;
    if !is_prime(ell) {
        return Err(ArithError::NotAPrime(ell));
    }
    if ell == p {
        return Err(ArithError::EllEqualsP(p));
    }
    let p2 = p.checked_mul(p).ok_or(ArithError::PrimeTooLarge(p))?;
    Ok(powmod(ell as i64, p - 1, p2) != 1)
}

/// An exact Bernoulli number B_k, stored as a reduced rational.
///
/// Sign convention: B_1 = -1/2, B_2 = 1/6, B_4 = -1/30.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliValue {
    pub index: u64,
    pub value: BigRational,
}

impl BernoulliValue {
    pub fn numerator(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.value.denom()
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// B_k via the recursion sum_{j=0}^{k} C(k+1, j) B_j = 0.
pub fn bernoulli(k: u64) -> Result<BernoulliValue, ArithError> {
    if k > MAX_BERNOULLI_INDEX {
        return Err(ArithError::BernoulliIndexTooLarge(k));
    }
    let mut table: Vec<BigRational> = Vec::with_capacity(k as usize + 1);
    table.push(BigRational::one());
    for m in 1..=k {
        let mut sum = BigRational::zero();
        for (j, b) in table.iter().enumerate() {
            sum += BigRational::from_integer(binomial(m + 1, j as u64)) * b;
        }
        let value = -sum / BigRational::from_integer(BigInt::from(m + 1));
        table.push(value);
    }
    Ok(BernoulliValue {
        index: k,
        value: table.pop().expect("table is nonempty"),
    })
}

/// B_k via the Akiyama–Tanigawa triangle, an algorithm independent of the
/// recursion in [`bernoulli`]. The triangle natively produces the B_1 = +1/2
/// convention; the sign is flipped at index 1 so both routes agree.
pub fn bernoulli_akiyama_tanigawa(k: u64) -> Result<BernoulliValue, ArithError> {
    if k > MAX_BERNOULLI_INDEX {
        return Err(ArithError::BernoulliIndexTooLarge(k));
    }
    let n = k as usize;
    let mut row: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        row.push(BigRational::new(BigInt::one(), BigInt::from(m as u64 + 1)));
        for j in (1..=m).rev() {
            let diff = row[j - 1].clone() - row[j].clone();
            row[j - 1] = BigRational::from_integer(BigInt::from(j as u64)) * diff;
        }
    }
    let mut value = row[0].clone();
    if k == 1 {
        value = -value;
    }
    Ok(BernoulliValue { index: k, value })
}

/// Result of reducing a Bernoulli number mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BernoulliModP {
    /// p does not divide the denominator; the value is
    /// numerator * denominator^(-1) mod p.
    Residue(u64),
    /// p divides the denominator of B_k (by von Staudt–Clausen this happens
    /// exactly when p-1 divides k). The numerator is then prime to p.
    PInDenominator,
}

impl BernoulliModP {
    pub fn is_nonzero_residue(&self) -> bool {
        matches!(self, BernoulliModP::Residue(r) if *r != 0)
    }

    /// True iff p does not divide the numerator of B_k. A p-integral value
    /// with nonzero residue qualifies, and so does a p-in-denominator value
    /// (the numerator is coprime to the denominator, hence to p).
    pub fn numerator_prime_to_p(&self) -> bool {
        match self {
            BernoulliModP::Residue(r) => *r != 0,
            BernoulliModP::PInDenominator => true,
        }
    }
}

/// Reduce B_k modulo an odd prime p.
pub fn bernoulli_mod_p(k: u64, p: u64) -> Result<BernoulliModP, ArithError> {
    check_odd_prime(p)?;
    let b = bernoulli(k)?;
    let pb = BigInt::from(p);
    if b.denominator().mod_floor(&pb).is_zero() {
        return Ok(BernoulliModP::PInDenominator);
    }
    let num = b.numerator().mod_floor(&pb).to_u64().expect("residue fits");
    let den = b.denominator().mod_floor(&pb).to_u64().expect("residue fits");
    Ok(BernoulliModP::Residue(mulmod(num, invmod(den, p), p)))
}

/// Evidence record produced by [`check_unobstructed_bernoulli`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnobstructedEvidence {
    pub p: u64,
    pub exponent: i64,
    /// The Bernoulli indices examined, by default `{a+1, p-a}`.
    pub indices: Vec<u64>,
    /// One entry per index: the mod-p reduction of that Bernoulli number.
    pub values: Vec<(u64, BernoulliModP)>,
    pub unobstructed: bool,
}

/// Bernoulli unobstructedness criterion for the residual character with
/// ω-exponent `a` at level N = 1.
///
/// The criterion is that p divides the numerator of neither B_{a+1} nor
/// B_{p-a}. An index passes when its reduction is a nonzero residue, or when
/// p sits in the denominator (then the numerator is automatically prime
/// to p; this is the a = 1 case, where p-1 divides p-a+... the index p-1).
/// A zero residue fails.
pub fn check_unobstructed_bernoulli(p: u64, a: i64) -> Result<UnobstructedEvidence, ArithError> {
    check_odd_prime(p)?;
    if a.rem_euclid(2) == 0 {
        return Err(ArithError::EvenCharacterExponent(a));
    }
    if a < 1 || a as u64 > p - 2 {
        return Err(ArithError::ExponentOutOfRange { a, max: p - 2 });
    }
    let indices = vec![a as u64 + 1, p - a as u64];
    check_unobstructed_bernoulli_with_indices(p, a, &indices)
}

/// Same as [`check_unobstructed_bernoulli`] but with a caller-chosen index
/// set. The default `{a+1, p-a}` pattern is not restated by every source, so
/// the index set is kept configurable.
pub fn check_unobstructed_bernoulli_with_indices(
    p: u64,
    a: i64,
    indices: &[u64],
) -> Result<UnobstructedEvidence, ArithError> {
    check_odd_prime(p)?;
    let mut values = Vec::with_capacity(indices.len());
    let mut unobstructed = true;
    for &k in indices {
        let v = bernoulli_mod_p(k, p)?;
        unobstructed &= v.numerator_prime_to_p();
        values.push((k, v));
    }
    Ok(UnobstructedEvidence {
        p,
        exponent: a,
        indices: indices.to_vec(),
        values,
        unobstructed,
    })
}

/// The arithmetic context for one hypothesis hunt: an odd prime p, a level
/// N coprime to p, the ω-exponent a of the residual character, and an
/// optional ramified prime candidate l.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisContext {
    pub p: u64,
    pub level: u64,
    pub exponent: i64,
    pub ell: Option<u64>,
}

impl HypothesisContext {
    pub fn new(p: u64, level: u64, exponent: i64, ell: Option<u64>) -> Result<Self, ArithError> {
        check_odd_prime(p)?;
        if level == 0 || level.gcd(&p) != 1 {
            return Err(ArithError::LevelNotCoprime { n: level, p });
        }
        if let Some(l) = ell {
            if !is_prime(l) {
                return Err(ArithError::NotAPrime(l));
            }
            if level.is_multiple_of(l) || l == p {
                return Err(ArithError::EllDividesLevel { ell: l, np: level * p });
            }
        }
        Ok(HypothesisContext {
            p,
            level,
            exponent,
            ell,
        })
    }
}
