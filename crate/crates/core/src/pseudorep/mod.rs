//! Desk-scale laboratory for 2-dimensional pseudo-characters over small
//! finite local rings: axiom checking, reducibility, GMA extraction, and
//! brute-force answers to "does this pseudo-character arise from an actual
//! representation".
//!
//! Profinite groups are replaced by finite quotients from a fixed catalog;
//! complete local rings by finite ones with explicit tables. Exhaustive
//! claims are kept honest by hard size caps and visit budgets.

mod gma;
mod group;
mod ring;
mod sample;
mod search;
mod table;

pub use gma::{
    brute_h1_dimension, brute_z1_basis, find_splitting_element, fp_rank, free_rank_one_transport,
    minimal_generator_count, module_closure, nullspace_basis, residual_characters, DeskGma,
};
pub use group::{FiniteGroupPresentation, WordTree, MAX_GROUP_SIZE};
pub use ring::{FiniteLocalRing, MAX_RING_SIZE};
pub use sample::{
    all_characters, enumerate_deformations, random_gl2, sample_representation, SampleRng,
};
pub use search::{
    arises_from_representation, SearchConfig, SearchOutcome, DEFAULT_SEARCH_BUDGET,
    MAX_SEARCH_GENERATORS,
};
pub use table::{
    enumerate_characters, extend_to_representation, is_character, mat_det, mat_mul, mat_trace,
    AxiomViolation, CharacterPair, PseudoCharacterTable,
};

use std::rc::Rc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PseudoError {
    #[error("ring of size {size} exceeds the desk cap {max}")]
    RingTooLarge { size: usize, max: usize },
    #[error("group of order {size} exceeds the desk cap {max}")]
    GroupTooLarge { size: usize, max: usize },
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("ring validation failed: {0}")]
    NotARing(&'static str),
    #[error("group validation failed: {0}")]
    NotAGroup(&'static str),
    #[error("the listed generators do not generate the group")]
    GeneratorsDontGenerate,
    #[error("expected {expected} generator images, got {got}")]
    WrongGeneratorCount { got: usize, expected: usize },
    #[error("generator images do not extend to a homomorphism (fails at pair ({g}, {h}))")]
    NotAHomomorphism { g: u16, h: u16 },
    #[error("quotient ideal contains a unit")]
    QuotientIdealNotProper,
    #[error("residual diagonal characters coincide (residually scalar input)")]
    ResiduallyScalar,
    #[error("input is not residually triangular; conjugate to adapted coordinates first")]
    NotResiduallyTriangular,
    #[error("the pairing takes a unit value, which no GMA over a local ring allows")]
    PairingNotInMaximalIdeal,
    #[error("element {g} is not a valid splitting element")]
    BadSplittingElement { g: u16 },
    #[error("the residual characters are not recorded as a split pair")]
    ResidualNotSplit,
    #[error("B is not free of rank one")]
    BNotFreeRankOne,
    #[error("transport changed a trace at element {g}")]
    TransportChangedTrace { g: u16 },
    #[error("search supports at most {max} generators, got {got}")]
    TooManyGenerators { got: usize, max: usize },
    #[error("unknown catalog tag `{0}`")]
    UnknownTag(String),
}

/// Parse a ring catalog tag: `fp:P`, `eps:P` (dual numbers), `xy:P`
/// (square-zero plane), `zp2:P`.
pub fn ring_from_tag(tag: &str) -> Result<Rc<FiniteLocalRing>, PseudoError> {
    let (kind, p) = tag
        .split_once(':')
        .ok_or_else(|| PseudoError::UnknownTag(tag.to_string()))?;
    let p: u64 = p
        .parse()
        .map_err(|_| PseudoError::UnknownTag(tag.to_string()))?;
    match kind {
        "fp" => FiniteLocalRing::prime_field(p),
        "eps" => FiniteLocalRing::dual_numbers(p),
        "xy" => FiniteLocalRing::square_zero_plane(p),
        "zp2" => FiniteLocalRing::z_mod_p_squared(p),
        _ => Err(PseudoError::UnknownTag(tag.to_string())),
    }
}

/// Parse a group catalog tag: `cN`, `dN` (dihedral of order 2N), `s3`,
/// `dihNxM` (generalized dihedral), or a product `cNxcM`.
pub fn group_from_tag(tag: &str) -> Result<Rc<FiniteGroupPresentation>, PseudoError> {
    let bad = || PseudoError::UnknownTag(tag.to_string());
    if tag == "s3" {
        return FiniteGroupPresentation::s3();
    }
    if let Some(rest) = tag.strip_prefix("dih") {
        let (n, m) = rest.split_once('x').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let m: usize = m.parse().map_err(|_| bad())?;
        return FiniteGroupPresentation::generalized_dihedral(n, m);
    }
    if let Some((left, right)) = tag.split_once('x') {
        let g = group_from_tag(left)?;
        let h = group_from_tag(right)?;
        return FiniteGroupPresentation::direct_product(&g, &h);
    }
    if let Some(n) = tag.strip_prefix('c') {
        let n: usize = n.parse().map_err(|_| bad())?;
        return FiniteGroupPresentation::cyclic(n);
    }
    if let Some(n) = tag.strip_prefix('d') {
        let n: usize = n.parse().map_err(|_| bad())?;
        return FiniteGroupPresentation::dihedral(n);
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tag_parsing() {
        assert_eq!(ring_from_tag("fp:5").unwrap().size(), 5);
        assert_eq!(ring_from_tag("eps:3").unwrap().size(), 9);
        assert_eq!(ring_from_tag("xy:3").unwrap().size(), 27);
        assert_eq!(ring_from_tag("zp2:5").unwrap().size(), 25);
        assert!(ring_from_tag("gf:4").is_err());

        assert_eq!(group_from_tag("c6").unwrap().size(), 6);
        assert_eq!(group_from_tag("d4").unwrap().size(), 8);
        assert_eq!(group_from_tag("s3").unwrap().size(), 6);
        assert_eq!(group_from_tag("dih3x3").unwrap().size(), 18);
        assert_eq!(group_from_tag("c2xc3").unwrap().size(), 6);
        assert!(group_from_tag("q8").is_err());
    }
}
