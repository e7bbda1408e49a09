//! Dimension bookkeeping for Galois cohomology under explicitly tracked
//! hypotheses.
//!
//! Nothing here computes cohomology from scratch: the base H^1 dimensions
//! enter as inputs carrying hypothesis flags, and the module derives every
//! downstream quantity from them (Euler-characteristic identities, the
//! Kummer-theory count, level-raising deltas, tangent-space formulas). An
//! operation whose hypothesis flags are not established refuses to produce
//! a number and returns a structured outcome instead.

use crate::arith;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CohomError {
    #[error("hypothesis not established: {0}")]
    HypothesisNotEstablished(&'static str),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("{0} is not prime")]
    NotAPrime(u64),
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("l = {ell} must not divide Np = {np}")]
    EllDividesLevel { ell: u64, np: u64 },
    #[error("p | l-1 is outside the supported hypotheses (l = {ell}, p = {p})")]
    SplitPrimeUnsupported { ell: u64, p: u64 },
}

/// A character chi = omega_p^a of the Galois group unramified outside Np,
/// evaluated in the N = 1 mode: chi(Frob_q) = q^a mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterData {
    pub p: u64,
    pub level: u64,
    pub exponent: i64,
}

impl CharacterData {
    pub fn new(p: u64, level: u64, exponent: i64) -> Result<Self, CohomError> {
        if p < 3 || !arith::is_prime(p) {
            return Err(CohomError::NotAnOddPrime(p));
        }
        Ok(CharacterData { p, level, exponent })
    }

    /// chi is odd iff its omega-exponent is odd (omega sends complex
    /// conjugation to -1). Parity is well defined mod p-1 because p-1 is
    /// even.
    pub fn is_odd(&self) -> bool {
        self.exponent.rem_euclid(2) == 1
    }

    /// chi(Frob_q) = q^a mod p for a prime q not dividing Np.
    pub fn eval_frobenius(&self, q: u64) -> u64 {
        let e = self.exponent.rem_euclid(self.p as i64 - 1) as u64;
        arith::powmod(q as i64, e, self.p)
    }
}

/// Check whether chi^i restricted to the decomposition group at l equals
/// the mod-p cyclotomic character there: l^(i*a) = l (mod p).
pub fn restriction_is_cyclotomic(chi: &CharacterData, i: i8, ell: u64) -> Result<bool, CohomError> {
    assert!(i == 1 || i == -1, "i is a sign");
    if !arith::is_prime(ell) {
        return Err(CohomError::NotAPrime(ell));
    }
    if ell == chi.p || chi.level.is_multiple_of(ell) {
        return Err(CohomError::EllDividesLevel {
            ell,
            np: chi.level * chi.p,
        });
    }
    let exponent = (i as i64 * chi.exponent - 1).rem_euclid(chi.p as i64 - 1) as u64;
    Ok(arith::powmod(ell as i64, exponent, chi.p) == 1)
}

/// The dimension tuple feeding the bookkeeping formulas: dim H^1 of the
/// trivial character, of chi, and of chi^{-1}, the corresponding H^2
/// dimensions, and the hypothesis flags under which they were established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomProfile {
    pub k: u64,
    pub m: u64,
    pub n: u64,
    pub h2_chi: u64,
    pub h2_chi_inv: u64,
    pub h2_triv: u64,
    pub flags: HypothesisFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HypothesisFlags {
    pub p_coprime_phi_level: bool,
    pub chi_odd: bool,
    pub unobstructed: bool,
}

impl CohomProfile {
    pub fn new(
        k: u64,
        m: u64,
        n: u64,
        h2_chi: u64,
        h2_chi_inv: u64,
        h2_triv: u64,
        flags: HypothesisFlags,
    ) -> Result<Self, CohomError> {
        if m == 0 || n == 0 {
            return Err(CohomError::InconsistentInput(
                "dim H^1(G, chi^{±1}) is positive for odd chi".into(),
            ));
        }
        if flags.chi_odd && (h2_chi != m - 1 || h2_chi_inv != n - 1) {
            return Err(CohomError::InconsistentInput(format!(
                "odd chi forces dim H^2 = dim H^1 - 1, got ({h2_chi}, {h2_chi_inv}) from ({m}, {n})"
            )));
        }
        Ok(CohomProfile {
            k,
            m,
            n,
            h2_chi,
            h2_chi_inv,
            h2_triv,
            flags,
        })
    }

    /// The unobstructed profile k = m = n = 1 with vanishing H^2, as
    /// established by a passing Bernoulli criterion at N = 1.
    pub fn unobstructed() -> Self {
        CohomProfile {
            k: 1,
            m: 1,
            n: 1,
            h2_chi: 0,
            h2_chi_inv: 0,
            h2_triv: 0,
            flags: HypothesisFlags {
                p_coprime_phi_level: true,
                chi_odd: true,
                unobstructed: true,
            },
        }
    }
}

/// dim H^2(G, chi) = dim H^1(G, chi) - 1 for odd chi (global Euler
/// characteristic). Also certifies dim H^1 > 0.
pub fn euler_h2(m: u64, chi_odd: bool) -> Result<u64, CohomError> {
    if !chi_odd {
        return Err(CohomError::HypothesisNotEstablished("chi odd"));
    }
    if m == 0 {
        return Err(CohomError::InconsistentInput(
            "dim H^1(G, chi) = 0 contradicts dim H^1 - dim H^2 = 1 for odd chi".into(),
        ));
    }
    Ok(m - 1)
}

/// Kummer theory: dim H^1(G, omega_p) = 1 + the number of distinct primes
/// dividing N.
pub fn kummer_h1_omega(level: u64, p: u64) -> Result<u64, CohomError> {
    if !arith::is_prime(p) {
        return Err(CohomError::NotAPrime(p));
    }
    if level == 0 || level.is_multiple_of(p) {
        return Err(CohomError::InconsistentInput(format!(
            "level {level} must be positive and coprime to p = {p}"
        )));
    }
    let mut count = 0u64;
    let mut rest = level;
    let mut d = 2u64;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            count += 1;
            while rest.is_multiple_of(d) {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        count += 1;
    }
    Ok(1 + count)
}

/// How much dim H^1(G, chi) can grow when ramification at l is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelRaisingDelta {
    /// The exact increment, available when the base dimension is 1.
    Exact(u64),
    /// The general upper bound on the increment.
    UpperBound(u64),
}

/// The Greenberg–Wiles increment of dim H^1(G, chi) at a new prime l with
/// p not dividing l-1: exactly 1 when chi restricts to the cyclotomic
/// character at l (and the base dimension is 1), else 0; without the
/// base-dimension flag only the upper bound 1 is claimed.
pub fn level_raising_delta(
    chi: &CharacterData,
    ell: u64,
    base_dim_is_one: bool,
) -> Result<LevelRaisingDelta, CohomError> {
    if !arith::is_prime(ell) {
        return Err(CohomError::NotAPrime(ell));
    }
    if ell == chi.p || chi.level.is_multiple_of(ell) {
        return Err(CohomError::EllDividesLevel {
            ell,
            np: chi.level * chi.p,
        });
    }
    if (ell - 1).is_multiple_of(chi.p) {
        return Err(CohomError::SplitPrimeUnsupported { ell, p: chi.p });
    }
    if !base_dim_is_one {
        return Ok(LevelRaisingDelta::UpperBound(1));
    }
    let raised = restriction_is_cyclotomic(chi, 1, ell)?;
    Ok(LevelRaisingDelta::Exact(if raised { 1 } else { 0 }))
}

/// Tangent dimension of the pseudo-deformation ring: 2k + mn, valid when
/// H^2(G, 1) vanishes.
pub fn pseudo_tangent_dim(profile: &CohomProfile) -> Result<u64, CohomError> {
    if profile.h2_triv != 0 {
        return Err(CohomError::HypothesisNotEstablished("H^2(G, 1) = 0"));
    }
    Ok(2 * profile.k + profile.m * profile.n)
}

/// Upper bound m + n + 2k - 1 for the tangent dimension of the deformation
/// ring of a residually non-split (Borel) representation.
pub fn borel_tangent_bound(profile: &CohomProfile) -> u64 {
    profile.m + profile.n + 2 * profile.k - 1
}

/// dim H^2(G, ad) = dim H^1(G, ad) - 3 for an odd representation with
/// scalar endomorphisms and p coprime to phi(N).
pub fn adjoint_h2(
    h1_adjoint: u64,
    rho_odd: bool,
    endomorphisms_scalar: bool,
    p_coprime_phi_level: bool,
) -> Result<u64, CohomError> {
    if !rho_odd {
        return Err(CohomError::HypothesisNotEstablished("rho odd"));
    }
    if !endomorphisms_scalar {
        return Err(CohomError::HypothesisNotEstablished("End(rho) = F"));
    }
    if !p_coprime_phi_level {
        return Err(CohomError::HypothesisNotEstablished("p coprime to phi(N)"));
    }
    if h1_adjoint < 3 {
        return Err(CohomError::InconsistentInput(format!(
            "dim H^1(G, ad) = {h1_adjoint} < 3 contradicts the Euler characteristic"
        )));
    }
    Ok(h1_adjoint - 3)
}

/// Necessary condition for the universal pseudo-character to arise from a
/// representation: min(m, n) = 1, i.e. (m-1)(n-1) = 0.
pub fn representation_necessity(m: u64, n: u64, h2_triv_zero: bool) -> Result<bool, CohomError> {
    if !h2_triv_zero {
        return Err(CohomError::HypothesisNotEstablished("H^2(G, 1) = 0"));
    }
    if m == 0 || n == 0 {
        return Err(CohomError::InconsistentInput(
            "both H^1(G, chi) and H^1(G, chi^{-1}) are nonzero in this regime".into(),
        ));
    }
    Ok(m.min(n) == 1)
}
