//! The quadratic extension by s with s² = 1 + UV, and the h-polynomial
//! family h_{i+1} = 2s·h_i - h_{i-1}, h_0 = 0, h_1 = 1.
//!
//! The h-polynomials control powers of the tame inertia matrix
//! M = [[s, U], [V, s]]: M^n = h_n·M - h_{n-1}·I. Adjoining s formally
//! keeps everything exact; for odd index the h-polynomial is s-free and
//! congruent to its index modulo the ideal (UV).

use super::{SeriesError, TruncatedSeries};
use crate::arith;
use num_bigint::BigInt;

/// Largest supported h-polynomial index.
pub const MAX_H_INDEX: u64 = 10_000;

const UV_VARS: [&str; 2] = ["U", "V"];

/// An element a + b·s of the extension ring, with a and b truncated series
/// in U and V and s² = 1 + UV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtExtSeries {
    pub a_part: TruncatedSeries,
    pub s_part: TruncatedSeries,
}

impl SqrtExtSeries {
    pub fn zero(degree: usize, modulus: Option<u64>) -> Self {
        SqrtExtSeries {
            a_part: TruncatedSeries::zero(&UV_VARS, degree, modulus),
            s_part: TruncatedSeries::zero(&UV_VARS, degree, modulus),
        }
    }

    pub fn constant(value: i64, degree: usize, modulus: Option<u64>) -> Self {
        SqrtExtSeries {
            a_part: TruncatedSeries::constant(&UV_VARS, degree, modulus, value),
            s_part: TruncatedSeries::zero(&UV_VARS, degree, modulus),
        }
    }

    /// The generator s itself.
    pub fn s(degree: usize, modulus: Option<u64>) -> Self {
        SqrtExtSeries {
            a_part: TruncatedSeries::zero(&UV_VARS, degree, modulus),
            s_part: TruncatedSeries::constant(&UV_VARS, degree, modulus, 1),
        }
    }

    pub fn from_parts(a_part: TruncatedSeries, s_part: TruncatedSeries) -> Self {
        SqrtExtSeries { a_part, s_part }
    }

    fn s_squared(&self) -> TruncatedSeries {
        let degree = self.a_part.truncation_degree();
        let modulus = self.a_part.modulus();
        let one = TruncatedSeries::constant(&UV_VARS, degree, modulus, 1);
        let u = TruncatedSeries::variable(&UV_VARS, degree, modulus, "U").unwrap();
        let v = TruncatedSeries::variable(&UV_VARS, degree, modulus, "V").unwrap();
        one.add(&u.mul(&v).unwrap()).unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.a_part.is_zero() && self.s_part.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(SqrtExtSeries {
            a_part: self.a_part.add(&other.a_part)?,
            s_part: self.s_part.add(&other.s_part)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(SqrtExtSeries {
            a_part: self.a_part.sub(&other.a_part)?,
            s_part: self.s_part.sub(&other.s_part)?,
        })
    }

    pub fn neg(&self) -> Self {
        SqrtExtSeries {
            a_part: self.a_part.neg(),
            s_part: self.s_part.neg(),
        }
    }

    /// (a + bs)(c + ds) = (ac + bd(1+UV)) + (ad + bc)s.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let ac = self.a_part.mul(&other.a_part)?;
        let bd = self.s_part.mul(&other.s_part)?;
        let ad = self.a_part.mul(&other.s_part)?;
        let bc = self.s_part.mul(&other.a_part)?;
        Ok(SqrtExtSeries {
            a_part: ac.add(&bd.mul(&self.s_squared())?)?,
            s_part: ad.add(&bc)?,
        })
    }

    pub fn scalar_mul(&self, scalar: &BigInt) -> Self {
        SqrtExtSeries {
            a_part: self.a_part.scalar_mul(scalar),
            s_part: self.s_part.scalar_mul(scalar),
        }
    }

    /// Value at U = V = 0 (which forces s = 1): the sum of the two constant
    /// terms.
    pub fn specialize_origin(&self) -> BigInt {
        self.a_part.constant_term() + self.s_part.constant_term()
    }
}

/// The h-polynomial of the given index, computed by the defining recurrence
/// in the s-extension ring.
pub fn h_polynomial(index: u64, degree: usize, modulus: Option<u64>) -> Result<SqrtExtSeries, SeriesError> {
    if index > MAX_H_INDEX {
        return Err(SeriesError::IndexTooLarge {
            index,
            max: MAX_H_INDEX,
        });
    }
    let mut prev = SqrtExtSeries::zero(degree, modulus); // h_0
    if index == 0 {
        return Ok(prev);
    }
    let mut curr = SqrtExtSeries::constant(1, degree, modulus); // h_1
    let two_s = SqrtExtSeries::s(degree, modulus).scalar_mul(&BigInt::from(2));
    for _ in 1..index {
        let next = two_s.mul(&curr)?.sub(&prev)?;
        prev = curr;
        curr = next;
    }
    Ok(curr)
}

/// Outcome of checking h_l ≡ l (mod (UV)) with vanishing s-part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HCongruence {
    pub ell: u64,
    pub s_part_zero: bool,
    pub congruent_mod_uv: bool,
    pub holds: bool,
    /// a_part - l, the witness whose terms must all be divisible by UV.
    pub difference: TruncatedSeries,
    /// First term of the witness not divisible by UV, if any.
    pub offending_term: Option<Vec<u16>>,
    pub s_part: TruncatedSeries,
}

/// Check that h_l has zero s-part and a_part ≡ l modulo (UV), up to the
/// truncation degree. For even l the s-part is nonzero and the check fails
/// with the witness attached.
pub fn h_congruence_check(ell: u64, degree: usize, modulus: Option<u64>) -> Result<HCongruence, SeriesError> {
    let h = h_polynomial(ell, degree, modulus)?;
    let ell_const = constant_from_u64(ell, degree, modulus);
    let difference = h.a_part.sub(&ell_const)?;
    let offending_term = difference
        .terms()
        .find(|(expo, _)| expo[0] == 0 || expo[1] == 0)
        .map(|(expo, _)| expo.to_vec());
    let s_part_zero = h.s_part.is_zero();
    let congruent_mod_uv = offending_term.is_none();
    Ok(HCongruence {
        ell,
        s_part_zero,
        congruent_mod_uv,
        holds: s_part_zero && congruent_mod_uv,
        difference,
        offending_term,
        s_part: h.s_part,
    })
}

fn constant_from_u64(value: u64, degree: usize, modulus: Option<u64>) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(&UV_VARS, degree, modulus);
    let one = TruncatedSeries::constant(&UV_VARS, degree, modulus, 1);
    out = out.add(&one.scalar_mul(&BigInt::from(value))).unwrap();
    out
}

/// 2x2 matrices over the s-extension ring.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Mat2 {
    e: [SqrtExtSeries; 4],
}

impl Mat2 {
    fn identity(degree: usize, modulus: Option<u64>) -> Self {
        Mat2 {
            e: [
                SqrtExtSeries::constant(1, degree, modulus),
                SqrtExtSeries::zero(degree, modulus),
                SqrtExtSeries::zero(degree, modulus),
                SqrtExtSeries::constant(1, degree, modulus),
            ],
        }
    }

    fn tame_inertia(degree: usize, modulus: Option<u64>) -> Self {
        let u = TruncatedSeries::variable(&UV_VARS, degree, modulus, "U").unwrap();
        let v = TruncatedSeries::variable(&UV_VARS, degree, modulus, "V").unwrap();
        let zero = TruncatedSeries::zero(&UV_VARS, degree, modulus);
        Mat2 {
            e: [
                SqrtExtSeries::s(degree, modulus),
                SqrtExtSeries::from_parts(u, zero.clone()),
                SqrtExtSeries::from_parts(v, zero),
                SqrtExtSeries::s(degree, modulus),
            ],
        }
    }

    fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let p = |i: usize, j: usize, k: usize| -> Result<SqrtExtSeries, SeriesError> {
            self.e[2 * i + k].mul(&other.e[2 * k + j])
        };
        Ok(Mat2 {
            e: [
                p(0, 0, 0)?.add(&p(0, 0, 1)?)?,
                p(0, 1, 0)?.add(&p(0, 1, 1)?)?,
                p(1, 0, 0)?.add(&p(1, 0, 1)?)?,
                p(1, 1, 0)?.add(&p(1, 1, 1)?)?,
            ],
        })
    }

    fn pow(&self, n: u64, degree: usize, modulus: Option<u64>) -> Result<Self, SeriesError> {
        let mut acc = Mat2::identity(degree, modulus);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    fn scalar(&self, c: &SqrtExtSeries) -> Result<Self, SeriesError> {
        Ok(Mat2 {
            e: [
                self.e[0].mul(c)?,
                self.e[1].mul(c)?,
                self.e[2].mul(c)?,
                self.e[3].mul(c)?,
            ],
        })
    }

    fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(Mat2 {
            e: [
                self.e[0].sub(&other.e[0])?,
                self.e[1].sub(&other.e[1])?,
                self.e[2].sub(&other.e[2])?,
                self.e[3].sub(&other.e[3])?,
            ],
        })
    }
}

/// Check M^n = h_n·M - h_{n-1}·I entrywise for the tame inertia matrix
/// M = [[s, U], [V, s]], truncated at the given degree.
pub fn matrix_power_check(n: u64, degree: usize, modulus: Option<u64>) -> Result<bool, SeriesError> {
    if n == 0 || n > MAX_H_INDEX {
        return Err(SeriesError::IndexTooLarge {
            index: n,
            max: MAX_H_INDEX,
        });
    }
    let m = Mat2::tame_inertia(degree, modulus);
    let lhs = m.pow(n, degree, modulus)?;
    let h_n = h_polynomial(n, degree, modulus)?;
    let h_prev = h_polynomial(n - 1, degree, modulus)?;
    let rhs = m
        .scalar(&h_n)?
        .sub(&Mat2::identity(degree, modulus).scalar(&h_prev)?)?;
    Ok(lhs == rhs)
}

/// The two relation elements presenting the deformation ring at a tamely
/// ramified prime l with p | l + 1:
/// `U((1+X) + h_l(1+Y))` and `V((1+Y) + h_l(1+X))` over F_p in X, Y, U, V.
/// Both are congruent to U(X-Y), resp. V(Y-X), modulo (UV).
pub fn tame_relation_elements(
    p: u64,
    ell: u64,
    degree: usize,
) -> Result<(TruncatedSeries, TruncatedSeries), SeriesError> {
    if p < 3 || !arith::is_prime(p) {
        return Err(SeriesError::NotAnOddPrime(p));
    }
    if !arith::is_prime(ell) {
        return Err(SeriesError::NotAPrime(ell));
    }
    if ell.is_multiple_of(2) {
        return Err(SeriesError::EvenEll(ell));
    }
    if !(ell + 1).is_multiple_of(p) {
        return Err(SeriesError::DivisibilityHypothesis { p, ell });
    }
    let h = h_polynomial(ell, degree, Some(p))?;
    debug_assert!(h.s_part.is_zero(), "odd-index h-polynomials are s-free");
    let vars = ["X", "Y", "U", "V"];
    let h_xy = h.a_part.embed(&vars)?;
    let one = TruncatedSeries::constant(&vars, degree, Some(p), 1);
    let x = TruncatedSeries::variable(&vars, degree, Some(p), "X")?;
    let y = TruncatedSeries::variable(&vars, degree, Some(p), "Y")?;
    let u = TruncatedSeries::variable(&vars, degree, Some(p), "U")?;
    let v = TruncatedSeries::variable(&vars, degree, Some(p), "V")?;
    let one_plus_x = one.add(&x)?;
    let one_plus_y = one.add(&y)?;
    let first = u.mul(&one_plus_x.add(&h_xy.mul(&one_plus_y)?)?)?;
    let second = v.mul(&one_plus_y.add(&h_xy.mul(&one_plus_x)?)?)?;
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        assert!(h_polynomial(0, 8, None).unwrap().is_zero());
        let h1 = h_polynomial(1, 8, None).unwrap();
        assert_eq!(h1, SqrtExtSeries::constant(1, 8, None));
    }

    #[test]
    fn one_recurrence_step() {
        // h_2 = 2s
        let h2 = h_polynomial(2, 8, None).unwrap();
        assert!(h2.a_part.is_zero());
        assert_eq!(h2.s_part.constant_term(), BigInt::from(2));
    }

    #[test]
    fn two_recurrence_steps() {
        // h_3 = 4(1+UV) - 1 = 3 + 4UV, s-free
        let h3 = h_polynomial(3, 8, None).unwrap();
        assert!(h3.s_part.is_zero());
        assert_eq!(h3.a_part.render(), "3 + 4*U*V");
    }

    #[test]
    fn congruence_check_examples() {
        for ell in [3u64, 5, 7, 11, 13] {
            let c = h_congruence_check(ell, 8, None).unwrap();
            assert!(c.holds, "l = {ell}");
            assert!(c.s_part_zero);
        }
        let c2 = h_congruence_check(2, 8, None).unwrap();
        assert!(!c2.holds);
        assert!(!c2.s_part_zero);
        assert_eq!(c2.s_part.constant_term(), BigInt::from(2));
    }

    #[test]
    fn parity_and_specialization() {
        for n in 1..=50u64 {
            let h = h_polynomial(n, 6, None).unwrap();
            if n % 2 == 1 {
                assert!(h.s_part.is_zero(), "odd h_{n} has zero s-part");
                assert!(!h.a_part.is_zero());
            } else {
                assert!(h.a_part.is_zero(), "even h_{n} has zero a-part");
                assert!(!h.s_part.is_zero());
            }
            assert_eq!(h.specialize_origin(), BigInt::from(n), "h_{n}(s=1)");
        }
    }

    #[test]
    fn determinant_identity() {
        // h_{n+1} h_{n-1} - h_n^2 = -1
        let minus_one = SqrtExtSeries::constant(-1, 6, None);
        for n in 1..=50u64 {
            let lhs = h_polynomial(n + 1, 6, None)
                .unwrap()
                .mul(&h_polynomial(n - 1, 6, None).unwrap())
                .unwrap()
                .sub(
                    &h_polynomial(n, 6, None)
                        .unwrap()
                        .mul(&h_polynomial(n, 6, None).unwrap())
                        .unwrap(),
                )
                .unwrap();
            assert_eq!(lhs, minus_one, "n = {n}");
        }
    }

    #[test]
    fn matrix_powers_match_recurrence() {
        for n in 1..=20u64 {
            assert!(matrix_power_check(n, 6, None).unwrap(), "n = {n}");
            assert!(matrix_power_check(n, 6, Some(5)).unwrap(), "n = {n} mod 5");
        }
    }

    #[test]
    fn matrix_power_against_naive_multiplication() {
        let m = Mat2::tame_inertia(6, None);
        let mut naive = Mat2::identity(6, None);
        for n in 1..=7u64 {
            naive = naive.mul(&m).unwrap();
            assert_eq!(naive, m.pow(n, 6, None).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn relation_elements_reduce_correctly() {
        // p = 3, l = 5: (1+X) + h_l(1+Y) ≡ X - Y (mod (UV)) and the relation
        // elements have no degree-1 part.
        let (r1, r2) = tame_relation_elements(3, 5, 6).unwrap();
        let vars = ["X", "Y", "U", "V"];
        let x = TruncatedSeries::variable(&vars, 6, Some(3), "X").unwrap();
        let y = TruncatedSeries::variable(&vars, 6, Some(3), "Y").unwrap();
        let u = TruncatedSeries::variable(&vars, 6, Some(3), "U").unwrap();
        let v = TruncatedSeries::variable(&vars, 6, Some(3), "V").unwrap();

        let r1_mod_uv = r1.reduce_modulo_monomial(&[0, 0, 1, 1]);
        let expected1 = u.mul(&x.sub(&y).unwrap()).unwrap();
        assert_eq!(r1_mod_uv, expected1);

        let r2_mod_uv = r2.reduce_modulo_monomial(&[0, 0, 1, 1]);
        let expected2 = v.mul(&y.sub(&x).unwrap()).unwrap();
        assert_eq!(r2_mod_uv, expected2);

        // both relation elements lie in the square of the maximal ideal
        for r in [&r1, &r2] {
            for (expo, _) in r.terms() {
                assert!(expo.iter().map(|&e| e as usize).sum::<usize>() >= 2);
            }
        }
    }

    #[test]
    fn relation_elements_validate_hypotheses() {
        assert_eq!(
            tame_relation_elements(7, 5, 6),
            Err(SeriesError::DivisibilityHypothesis { p: 7, ell: 5 })
        );
        assert_eq!(tame_relation_elements(3, 2, 6), Err(SeriesError::EvenEll(2)));
        assert_eq!(tame_relation_elements(4, 3, 6), Err(SeriesError::NotAnOddPrime(4)));
    }
}
