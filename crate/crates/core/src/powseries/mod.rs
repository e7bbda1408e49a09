//! Truncated multivariate power series with exact coefficients.
//!
//! Series are dense maps from exponent vectors to coefficients, truncated at
//! a fixed total degree: every arithmetic result is exact below the
//! truncation. Coefficients are arbitrary-precision integers, optionally
//! reduced mod p.
//!
//! The [`sqrt_ext`] submodule adjoins a square root s of 1 + UV and houses
//! the h-polynomial recurrence used to certify tame inertia relations.

mod sqrt_ext;

pub use sqrt_ext::{
    h_congruence_check, h_polynomial, matrix_power_check, tame_relation_elements, HCongruence,
    SqrtExtSeries, MAX_H_INDEX,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum SeriesError {
    #[error("variable sets differ")]
    VariableMismatch,
    #[error("truncation degrees differ")]
    DegreeMismatch,
    #[error("coefficient moduli differ")]
    ModulusMismatch,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("index {index} exceeds the supported bound {max}")]
    IndexTooLarge { index: u64, max: u64 },
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("{0} is not prime")]
    NotAPrime(u64),
    #[error("hypothesis p | l+1 fails for p = {p}, l = {ell}")]
    DivisibilityHypothesis { p: u64, ell: u64 },
    #[error("l = {0} must be odd for the relation elements to be s-free")]
    EvenEll(u64),
}

/// A truncated multivariate power series: exponent vectors mapped to
/// nonzero coefficients, all of total degree at most the truncation degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: Vec<String>,
    degree: usize,
    modulus: Option<u64>,
    terms: BTreeMap<Vec<u16>, BigInt>,
}

fn total_degree(expo: &[u16]) -> usize {
    expo.iter().map(|&e| e as usize).sum()
}

impl TruncatedSeries {
    pub fn zero(vars: &[&str], degree: usize, modulus: Option<u64>) -> Self {
        TruncatedSeries {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            degree,
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], degree: usize, modulus: Option<u64>, value: i64) -> Self {
        let mut out = Self::zero(vars, degree, modulus);
        out.insert_term(vec![0; out.vars.len()], BigInt::from(value));
        out
    }

    pub fn variable(vars: &[&str], degree: usize, modulus: Option<u64>, name: &str) -> Result<Self, SeriesError> {
        let mut out = Self::zero(vars, degree, modulus);
        let idx = out
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| SeriesError::UnknownVariable(name.to_string()))?;
        let mut expo = vec![0u16; out.vars.len()];
        expo[idx] = 1;
        out.insert_term(expo, BigInt::one());
        Ok(out)
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn truncation_degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, expo: &[u16]) -> BigInt {
        self.terms.get(expo).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.vars.len()])
    }

    fn reduce_coeff(&self, c: BigInt) -> BigInt {
        match self.modulus {
            Some(p) => c.mod_floor(&BigInt::from(p)),
            None => c,
        }
    }

    /// Add `coeff` to the term at `expo`, dropping overflowing degrees and
    /// zero results.
    fn insert_term(&mut self, expo: Vec<u16>, coeff: BigInt) {
        debug_assert_eq!(expo.len(), self.vars.len());
        if total_degree(&expo) > self.degree {
            return;
        }
        let current = self.terms.remove(&expo).unwrap_or_else(BigInt::zero);
        let sum = self.reduce_coeff(current + coeff);
        if !sum.is_zero() {
            self.terms.insert(expo, sum);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.vars != other.vars {
            return Err(SeriesError::VariableMismatch);
        }
        if self.degree != other.degree {
            return Err(SeriesError::DegreeMismatch);
        }
        if self.modulus != other.modulus {
            return Err(SeriesError::ModulusMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (expo, coeff) in &other.terms {
            out.insert_term(expo.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero_like(self);
        for (expo, coeff) in &self.terms {
            out.insert_term(expo.clone(), -coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    fn zero_like(&self) -> Self {
        TruncatedSeries {
            vars: self.vars.clone(),
            degree: self.degree,
            modulus: self.modulus,
            terms: BTreeMap::new(),
        }
    }

    /// Exact truncated product: agrees with the untruncated product on every
    /// term of total degree at most the truncation degree.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.zero_like();
        for (e1, c1) in &self.terms {
            let d1 = total_degree(e1);
            for (e2, c2) in &other.terms {
                if d1 + total_degree(e2) > self.degree {
                    continue;
                }
                let expo: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_term(expo, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, scalar: &BigInt) -> Self {
        let mut out = self.zero_like();
        for (expo, coeff) in &self.terms {
            out.insert_term(expo.clone(), coeff * scalar);
        }
        out
    }

    /// Normal form modulo the monomial ideal generated by `mono`: drops
    /// every term whose exponent vector dominates `mono` componentwise.
    pub fn reduce_modulo_monomial(&self, mono: &[u16]) -> Self {
        assert_eq!(mono.len(), self.vars.len());
        let mut out = self.zero_like();
        for (expo, coeff) in &self.terms {
            if !expo.iter().zip(mono).all(|(e, m)| e >= m) {
                out.insert_term(expo.clone(), coeff.clone());
            }
        }
        out
    }

    /// Re-express the series in a larger variable set (every current
    /// variable must appear in `new_vars`).
    pub fn embed(&self, new_vars: &[&str]) -> Result<Self, SeriesError> {
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                new_vars
                    .iter()
                    .position(|n| n == v)
                    .ok_or_else(|| SeriesError::UnknownVariable(v.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = TruncatedSeries::zero(new_vars, self.degree, self.modulus);
        for (expo, coeff) in &self.terms {
            let mut new_expo = vec![0u16; new_vars.len()];
            for (i, &e) in expo.iter().enumerate() {
                new_expo[positions[i]] = e;
            }
            out.insert_term(new_expo, coeff.clone());
        }
        Ok(out)
    }

    /// Canonical text rendering in graded lexicographic order: ascending
    /// total degree, and within a degree descending lexicographic exponent
    /// vectors (so U precedes V). Used by golden-file tests.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut ordered: Vec<(&Vec<u16>, &BigInt)> = self.terms.iter().collect();
        ordered.sort_by(|(ea, _), (eb, _)| {
            total_degree(ea)
                .cmp(&total_degree(eb))
                .then_with(|| eb.cmp(ea))
        });
        let mut out = String::new();
        for (i, (expo, coeff)) in ordered.iter().enumerate() {
            let mono = self.render_monomial(expo);
            let (sign, magnitude) = if coeff.is_negative() {
                ("-", coeff.magnitude().to_string())
            } else {
                ("+", coeff.to_string())
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            match (&mono[..], &magnitude[..]) {
                ("", m) => out.push_str(m),
                (mo, "1") => out.push_str(mo),
                (mo, m) => {
                    out.push_str(m);
                    out.push('*');
                    out.push_str(mo);
                }
            }
        }
        out
    }

    fn render_monomial(&self, expo: &[u16]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in expo.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        parts.join("*")
    }
}
