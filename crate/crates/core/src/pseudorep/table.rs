//! Pseudo-character tables on a finite group over a finite local ring, the
//! trace-identity axioms, and reducibility testing.

use super::group::FiniteGroupPresentation;
use super::ring::FiniteLocalRing;
use super::PseudoError;
use std::rc::Rc;

/// A violation found by the axiom checker; element arguments are group
/// indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    TraceAtIdentity,
    DeterminantAtIdentity,
    CentralSymmetry { g: u16, h: u16 },
    DeterminantIdentity { g: u16 },
    DeterminantNotMultiplicative { g: u16, h: u16 },
    DeterminantNotUnit { g: u16 },
    TraceIdentity { g: u16, h: u16, k: u16 },
    ResidualMismatch { g: u16 },
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::TraceAtIdentity => write!(f, "t(1) != 2"),
            AxiomViolation::DeterminantAtIdentity => write!(f, "d(1) != 1"),
            AxiomViolation::CentralSymmetry { g, h } => write!(f, "t(gh) != t(hg) at ({g}, {h})"),
            AxiomViolation::DeterminantIdentity { g } => {
                write!(f, "d(g) != (t(g)^2 - t(g^2))/2 at {g}")
            }
            AxiomViolation::DeterminantNotMultiplicative { g, h } => {
                write!(f, "d(gh) != d(g)d(h) at ({g}, {h})")
            }
            AxiomViolation::DeterminantNotUnit { g } => write!(f, "d(g) is not a unit at {g}"),
            AxiomViolation::TraceIdentity { g, h, k } => {
                write!(f, "dimension-2 trace identity fails at ({g}, {h}, {k})")
            }
            AxiomViolation::ResidualMismatch { g } => {
                write!(f, "t mod m does not match the residual trace at {g}")
            }
        }
    }
}

/// A reducibility witness: the pair of characters summing to the trace.
pub type CharacterPair = (Vec<u32>, Vec<u32>);

/// A pseudo-character (t, d) on a finite group over a finite local ring,
/// deforming a recorded residual pair over F_p.
#[derive(Debug, Clone)]
pub struct PseudoCharacterTable {
    pub ring: Rc<FiniteLocalRing>,
    pub group: Rc<FiniteGroupPresentation>,
    pub t: Vec<u32>,
    pub d: Vec<u32>,
    pub residual_trace: Vec<u64>,
    pub residual_det: Vec<u64>,
    /// The split residual characters (chi_1, chi_2) when known; required by
    /// the reducibility search.
    pub residual_characters: Option<(Vec<u64>, Vec<u64>)>,
}

/// Extend generator images to the whole group along a word tree and verify
/// the result is a homomorphism. Returns one 2x2 matrix per group element.
pub fn extend_to_representation(
    ring: &FiniteLocalRing,
    group: &FiniteGroupPresentation,
    generator_images: &[[u32; 4]],
) -> Result<Vec<[u32; 4]>, PseudoError> {
    let gens = group.generators();
    if generator_images.len() != gens.len() {
        return Err(PseudoError::WrongGeneratorCount {
            got: generator_images.len(),
            expected: gens.len(),
        });
    }
    let tree = group
        .word_tree(gens)
        .expect("generators generate by construction");
    let identity_mat = [ring.one(), ring.zero(), ring.zero(), ring.one()];
    let mut rep = vec![identity_mat; group.size()];
    for &e in &tree.order[1..] {
        let (parent, gi) = tree.parent_gen[e as usize];
        rep[e as usize] = mat_mul(ring, &rep[parent as usize], &generator_images[gi]);
    }
    for g in group.elements() {
        for h in group.elements() {
            let prod = mat_mul(ring, &rep[g as usize], &rep[h as usize]);
            if prod != rep[group.mul(g, h) as usize] {
                return Err(PseudoError::NotAHomomorphism { g, h });
            }
        }
    }
    Ok(rep)
}

pub fn mat_mul(ring: &FiniteLocalRing, a: &[u32; 4], b: &[u32; 4]) -> [u32; 4] {
    [
        ring.add(ring.mul(a[0], b[0]), ring.mul(a[1], b[2])),
        ring.add(ring.mul(a[0], b[1]), ring.mul(a[1], b[3])),
        ring.add(ring.mul(a[2], b[0]), ring.mul(a[3], b[2])),
        ring.add(ring.mul(a[2], b[1]), ring.mul(a[3], b[3])),
    ]
}

pub fn mat_trace(ring: &FiniteLocalRing, a: &[u32; 4]) -> u32 {
    ring.add(a[0], a[3])
}

pub fn mat_det(ring: &FiniteLocalRing, a: &[u32; 4]) -> u32 {
    ring.sub(ring.mul(a[0], a[3]), ring.mul(a[1], a[2]))
}

impl PseudoCharacterTable {
    /// The trace/determinant table of a representation given by generator
    /// images. Also returns the full element-indexed representation.
    pub fn from_representation(
        ring: Rc<FiniteLocalRing>,
        group: Rc<FiniteGroupPresentation>,
        generator_images: &[[u32; 4]],
    ) -> Result<(Self, Vec<[u32; 4]>), PseudoError> {
        let rep = extend_to_representation(&ring, &group, generator_images)?;
        let t: Vec<u32> = rep.iter().map(|m| mat_trace(&ring, m)).collect();
        let d: Vec<u32> = rep.iter().map(|m| mat_det(&ring, m)).collect();
        let residual_trace: Vec<u64> = t.iter().map(|&x| ring.residue(x)).collect();
        let residual_det: Vec<u64> = d.iter().map(|&x| ring.residue(x)).collect();
        // the residual characters are the diagonal residues when the
        // residual off-diagonal product vanishes identically
        let b_all_zero = rep.iter().all(|m| ring.residue(m[1]) == 0);
        let c_all_zero = rep.iter().all(|m| ring.residue(m[2]) == 0);
        let residual_characters = if b_all_zero || c_all_zero {
            Some((
                rep.iter().map(|m| ring.residue(m[0])).collect(),
                rep.iter().map(|m| ring.residue(m[3])).collect(),
            ))
        } else {
            None
        };
        let table = PseudoCharacterTable {
            ring,
            group,
            t,
            d,
            residual_trace,
            residual_det,
            residual_characters,
        };
        Ok((table, rep))
    }

    /// The visibly reducible table eta_1 + eta_2 of a pair of characters.
    pub fn from_characters(
        ring: Rc<FiniteLocalRing>,
        group: Rc<FiniteGroupPresentation>,
        eta1: &[u32],
        eta2: &[u32],
    ) -> Self {
        let t: Vec<u32> = (0..group.size())
            .map(|g| ring.add(eta1[g], eta2[g]))
            .collect();
        let d: Vec<u32> = (0..group.size())
            .map(|g| ring.mul(eta1[g], eta2[g]))
            .collect();
        let residual_trace = t.iter().map(|&x| ring.residue(x)).collect();
        let residual_det = d.iter().map(|&x| ring.residue(x)).collect();
        let residual_characters = Some((
            eta1.iter().map(|&x| ring.residue(x)).collect(),
            eta2.iter().map(|&x| ring.residue(x)).collect(),
        ));
        PseudoCharacterTable {
            ring,
            group,
            t,
            d,
            residual_trace,
            residual_det,
            residual_characters,
        }
    }

    /// A table from a raw trace function; d is derived from the
    /// determinant identity d(g) = (t(g)^2 - t(g^2))/2.
    pub fn from_trace(
        ring: Rc<FiniteLocalRing>,
        group: Rc<FiniteGroupPresentation>,
        t: Vec<u32>,
        residual_characters: Option<(Vec<u64>, Vec<u64>)>,
    ) -> Self {
        let inv2 = ring
            .inverse(ring.from_int(2))
            .expect("2 is invertible: p is odd");
        let d: Vec<u32> = group
            .elements()
            .map(|g| {
                let tg = t[g as usize];
                let tg2 = t[group.mul(g, g) as usize];
                ring.mul(ring.sub(ring.mul(tg, tg), tg2), inv2)
            })
            .collect();
        let residual_trace = t.iter().map(|&x| ring.residue(x)).collect();
        let residual_det = d.iter().map(|&x| ring.residue(x)).collect();
        PseudoCharacterTable {
            ring,
            group,
            t,
            d,
            residual_trace,
            residual_det,
            residual_characters,
        }
    }

    /// Check all dimension-2 pseudo-character axioms; the first violation
    /// in a fixed deterministic scan order is returned.
    pub fn verify_axioms(&self) -> Result<(), AxiomViolation> {
        let ring = &*self.ring;
        let group = &*self.group;
        let id = group.identity() as usize;
        let two = ring.from_int(2);
        if self.t[id] != two {
            return Err(AxiomViolation::TraceAtIdentity);
        }
        if self.d[id] != ring.one() {
            return Err(AxiomViolation::DeterminantAtIdentity);
        }
        for g in group.elements() {
            if ring.residue(self.t[g as usize]) != self.residual_trace[g as usize] {
                return Err(AxiomViolation::ResidualMismatch { g });
            }
            if !ring.is_unit(self.d[g as usize]) {
                return Err(AxiomViolation::DeterminantNotUnit { g });
            }
        }
        let inv2 = ring.inverse(two).expect("p odd");
        for g in group.elements() {
            let tg = self.t[g as usize];
            let tg2 = self.t[group.mul(g, g) as usize];
            let derived = ring.mul(ring.sub(ring.mul(tg, tg), tg2), inv2);
            if self.d[g as usize] != derived {
                return Err(AxiomViolation::DeterminantIdentity { g });
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                if self.t[group.mul(g, h) as usize] != self.t[group.mul(h, g) as usize] {
                    return Err(AxiomViolation::CentralSymmetry { g, h });
                }
                let dgh = self.d[group.mul(g, h) as usize];
                if dgh != ring.mul(self.d[g as usize], self.d[h as usize]) {
                    return Err(AxiomViolation::DeterminantNotMultiplicative { g, h });
                }
            }
        }
        // t(g)t(h)t(k) - t(g)t(hk) - t(h)t(gk) - t(k)t(gh) + t(ghk) + t(gkh) = 0
        for g in group.elements() {
            let tg = self.t[g as usize];
            for h in group.elements() {
                let th = self.t[h as usize];
                let gh = group.mul(g, h);
                for k in group.elements() {
                    let tk = self.t[k as usize];
                    let mut acc = ring.mul(ring.mul(tg, th), tk);
                    acc = ring.sub(acc, ring.mul(tg, self.t[group.mul(h, k) as usize]));
                    acc = ring.sub(acc, ring.mul(th, self.t[group.mul(g, k) as usize]));
                    acc = ring.sub(acc, ring.mul(tk, self.t[gh as usize]));
                    acc = ring.add(acc, self.t[group.mul(gh, k) as usize]);
                    acc = ring.add(acc, self.t[group.mul(group.mul(g, k), h) as usize]);
                    if acc != ring.zero() {
                        return Err(AxiomViolation::TraceIdentity { g, h, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustive reducibility check: search for characters eta_1, eta_2
    /// deforming the recorded residual characters with t = eta_1 + eta_2.
    /// eta_2 is forced pointwise once eta_1 is chosen, so the search runs
    /// over deformations of chi_1 only.
    pub fn is_reducible(&self) -> Result<Option<CharacterPair>, PseudoError> {
        let (chi1, chi2) = self
            .residual_characters
            .as_ref()
            .ok_or(PseudoError::ResidualNotSplit)?;
        for eta1 in enumerate_characters(&self.ring, &self.group, chi1) {
            let eta2: Vec<u32> = (0..self.group.size())
                .map(|g| self.ring.sub(self.t[g], eta1[g]))
                .collect();
            if is_character(&self.ring, &self.group, &eta2)
                && eta2
                    .iter()
                    .zip(chi2)
                    .all(|(&x, &r)| self.ring.residue(x) == r)
            {
                return Ok(Some((eta1, eta2)));
            }
        }
        Ok(None)
    }

    /// Push the table through the quotient by the ideal generated by
    /// `ideal_gens`, which must sit inside the maximal ideal.
    pub fn reduce_modulo_ideal(&self, ideal_gens: &[u32]) -> Result<PseudoCharacterTable, PseudoError> {
        let (quotient, projection) = self.ring.quotient(ideal_gens)?;
        Ok(PseudoCharacterTable {
            ring: quotient,
            group: Rc::clone(&self.group),
            t: self.t.iter().map(|&x| projection[x as usize]).collect(),
            d: self.d.iter().map(|&x| projection[x as usize]).collect(),
            residual_trace: self.residual_trace.clone(),
            residual_det: self.residual_det.clone(),
            residual_characters: self.residual_characters.clone(),
        })
    }
}

/// True iff the element-indexed map is multiplicative with unit values.
pub fn is_character(ring: &FiniteLocalRing, group: &FiniteGroupPresentation, eta: &[u32]) -> bool {
    if eta[group.identity() as usize] != ring.one() {
        return false;
    }
    for g in group.elements() {
        if !ring.is_unit(eta[g as usize]) {
            return false;
        }
        for h in group.elements() {
            if eta[group.mul(g, h) as usize] != ring.mul(eta[g as usize], eta[h as usize]) {
                return false;
            }
        }
    }
    true
}

/// All characters G -> R^* whose residue is the given F_p-character,
/// enumerated deterministically by generator-image index.
pub fn enumerate_characters(
    ring: &FiniteLocalRing,
    group: &FiniteGroupPresentation,
    residual: &[u64],
) -> Vec<Vec<u32>> {
    let gens = group.generators();
    if gens.is_empty() {
        // trivial group
        return vec![vec![ring.one(); group.size()]];
    }
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            ring.units()
                .into_iter()
                .filter(|&u| ring.residue(u) == residual[g as usize])
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return Vec::new();
    }
    let tree = group.word_tree(gens).expect("generators generate");
    let mut found = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<u32> = choice
            .iter()
            .enumerate()
            .map(|(i, &c)| candidates[i][c])
            .collect();
        let mut eta = vec![ring.one(); group.size()];
        for &e in &tree.order[1..] {
            let (parent, gi) = tree.parent_gen[e as usize];
            eta[e as usize] = ring.mul(eta[parent as usize], images[gi]);
        }
        if is_character(ring, group, &eta) && eta.iter().zip(residual).all(|(&x, &r)| ring.residue(x) == r)
        {
            found.push(eta);
        }
        // odometer increment
        for i in (0..choice.len()).rev() {
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                continue 'outer;
            }
            choice[i] = 0;
            if i == 0 {
                break 'outer;
            }
        }
    }
    found
}
