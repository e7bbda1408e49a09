//! Desk-scale generalized matrix algebras extracted from representations.
//!
//! A representation in residually triangular coordinates (one off-diagonal
//! side vanishes mod the maximal ideal) with distinct residual diagonal
//! characters yields a GMA: B and C are the R-spans of the off-diagonal
//! entries inside R, the pairing is ring multiplication, and the pairing
//! ideal B·C measures the distance from reducibility. Modules are fully
//! enumerated; generator counts come from Nakayama quotients; cohomology
//! dimensions come from brute-force cocycle linear algebra over F_p.

use super::group::FiniteGroupPresentation;
use super::ring::FiniteLocalRing;
use super::table::{mat_mul, mat_trace};
use super::PseudoError;
use std::rc::Rc;

/// A type-(1,1) generalized matrix algebra with B, C realized as
/// R-submodules of R and the pairing given by ring multiplication.
#[derive(Debug, Clone)]
pub struct DeskGma {
    pub ring: Rc<FiniteLocalRing>,
    /// Residual diagonal characters (chi_1, chi_2) read off the input.
    pub residual_chi1: Vec<u64>,
    pub residual_chi2: Vec<u64>,
    /// Full element enumerations of the off-diagonal modules, sorted.
    pub b_module: Vec<u32>,
    pub c_module: Vec<u32>,
    /// The pairing ideal m'(B ⊗ C) = B·C, fully enumerated.
    pub pairing_ideal: Vec<u32>,
    /// The splitting element (an element whose image is exactly diagonal
    /// with distinct residual entries), when one was supplied or found.
    pub splitting_element: Option<u16>,
}

/// The R-submodule of R generated by the given elements (additive closure
/// under R-scaling), sorted.
pub fn module_closure(ring: &FiniteLocalRing, generators: &[u32]) -> Vec<u32> {
    let mut inside = vec![false; ring.size()];
    inside[ring.zero() as usize] = true;
    let mut frontier = vec![ring.zero()];
    for &g in generators {
        if !inside[g as usize] {
            inside[g as usize] = true;
            frontier.push(g);
        }
    }
    while let Some(x) = frontier.pop() {
        for r in ring.elements() {
            let rx = ring.mul(r, x);
            if !inside[rx as usize] {
                inside[rx as usize] = true;
                frontier.push(rx);
            }
        }
        for y in 0..ring.size() as u32 {
            if inside[y as usize] {
                let s = ring.add(x, y);
                if !inside[s as usize] {
                    inside[s as usize] = true;
                    frontier.push(s);
                }
            }
        }
    }
    (0..ring.size() as u32).filter(|&x| inside[x as usize]).collect()
}

/// Nakayama minimal generator count of a submodule of R: log_p |M / mM|.
pub fn minimal_generator_count(ring: &FiniteLocalRing, module: &[u32]) -> usize {
    if module.len() <= 1 {
        return 0;
    }
    let max_ideal = ring.maximal_ideal_elements();
    let mut products = Vec::new();
    for &m in &max_ideal {
        for &x in module {
            products.push(ring.mul(m, x));
        }
    }
    let m_module = module_closure(ring, &products);
    let quotient_size = module.len() / m_module.len();
    let p = ring.p() as usize;
    let mut mu = 0;
    let mut acc = 1;
    while acc < quotient_size {
        acc *= p;
        mu += 1;
    }
    assert_eq!(acc, quotient_size, "module quotient is an F_p vector space");
    mu
}

/// First group element whose image is exactly diagonal with distinct
/// residual diagonal entries, if any.
pub fn find_splitting_element(
    ring: &FiniteLocalRing,
    group: &FiniteGroupPresentation,
    rep: &[[u32; 4]],
) -> Option<u16> {
    group.elements().find(|&g| {
        let m = &rep[g as usize];
        m[1] == ring.zero()
            && m[2] == ring.zero()
            && ring.residue(m[0]) != ring.residue(m[3])
    })
}

impl DeskGma {
    /// Extract the GMA of a representation given on every group element.
    ///
    /// Preconditions: the residual diagonal characters are distinct
    /// somewhere (multiplicity-free), and the coordinates are residually
    /// triangular (at least one off-diagonal side vanishes mod m), so that
    /// the diagonal entries reduce to the residual characters. An optional
    /// splitting element is validated when supplied: its image must be
    /// exactly diagonal with distinct residual entries.
    pub fn from_representation(
        ring: Rc<FiniteLocalRing>,
        group: &FiniteGroupPresentation,
        rep: &[[u32; 4]],
        splitting_element: Option<u16>,
    ) -> Result<DeskGma, PseudoError> {
        assert_eq!(rep.len(), group.size());
        if rep
            .iter()
            .all(|m| ring.residue(m[0]) == ring.residue(m[3]))
        {
            return Err(PseudoError::ResiduallyScalar);
        }
        let b_res_zero = rep.iter().all(|m| ring.residue(m[1]) == 0);
        let c_res_zero = rep.iter().all(|m| ring.residue(m[2]) == 0);
        if !b_res_zero && !c_res_zero {
            return Err(PseudoError::NotResiduallyTriangular);
        }
        if let Some(g0) = splitting_element {
            let m = &rep[g0 as usize];
            if m[1] != ring.zero()
                || m[2] != ring.zero()
                || ring.residue(m[0]) == ring.residue(m[3])
            {
                return Err(PseudoError::BadSplittingElement { g: g0 });
            }
        }
        let residual_chi1: Vec<u64> = rep.iter().map(|m| ring.residue(m[0])).collect();
        let residual_chi2: Vec<u64> = rep.iter().map(|m| ring.residue(m[3])).collect();
        let b_module = module_closure(&ring, &rep.iter().map(|m| m[1]).collect::<Vec<_>>());
        let c_module = module_closure(&ring, &rep.iter().map(|m| m[2]).collect::<Vec<_>>());
        let mut products = Vec::new();
        for &b in &b_module {
            for &c in &c_module {
                let bc = ring.mul(b, c);
                if ring.is_unit(bc) {
                    return Err(PseudoError::PairingNotInMaximalIdeal);
                }
                products.push(bc);
            }
        }
        let pairing_ideal = module_closure(&ring, &products);
        Ok(DeskGma {
            ring,
            residual_chi1,
            residual_chi2,
            b_module,
            c_module,
            pairing_ideal,
            splitting_element,
        })
    }

    pub fn pairing_ideal_is_zero(&self) -> bool {
        self.pairing_ideal.len() == 1
    }

    /// The first module element generating B freely (it generates B and its
    /// annihilator in R is zero), if one exists.
    pub fn free_rank_one_generator(&self) -> Option<u32> {
        for &candidate in &self.b_module {
            if candidate == self.ring.zero() {
                continue;
            }
            if module_closure(&self.ring, &[candidate]) != self.b_module {
                continue;
            }
            let annihilator_trivial = self
                .ring
                .elements()
                .all(|y| y == self.ring.zero() || self.ring.mul(y, candidate) != self.ring.zero());
            if annihilator_trivial {
                return Some(candidate);
            }
        }
        None
    }

    /// Annihilator transfer: any y killing B also kills the pairing ideal.
    pub fn annihilator_transfers_to_pairing(&self) -> bool {
        for y in self.ring.elements() {
            let kills_b = self
                .b_module
                .iter()
                .all(|&b| self.ring.mul(y, b) == self.ring.zero());
            if kills_b {
                let kills_pairing = self
                    .pairing_ideal
                    .iter()
                    .all(|&x| self.ring.mul(y, x) == self.ring.zero());
                if !kills_pairing {
                    return false;
                }
            }
        }
        true
    }
}

/// When B is free of rank 1, transport the GMA representation into honest
/// 2x2 matrices over R: g goes to [[a_g, f(b_g)], [gamma·c_g, d_g]] for a
/// free generator gamma of B, with the same trace on every element.
pub fn free_rank_one_transport(
    gma: &DeskGma,
    group: &FiniteGroupPresentation,
    rep: &[[u32; 4]],
) -> Result<Vec<[u32; 4]>, PseudoError> {
    let ring = &*gma.ring;
    let gamma = gma
        .free_rank_one_generator()
        .ok_or(PseudoError::BNotFreeRankOne)?;
    // f_gamma(b) is the unique y with b = y*gamma
    let mut inverse_scale = vec![u32::MAX; ring.size()];
    for y in ring.elements() {
        inverse_scale[ring.mul(y, gamma) as usize] = y;
    }
    let transported: Vec<[u32; 4]> = rep
        .iter()
        .map(|m| {
            let f_b = inverse_scale[m[1] as usize];
            debug_assert_ne!(f_b, u32::MAX, "b_g lies in B = gamma R");
            [m[0], f_b, ring.mul(gamma, m[2]), m[3]]
        })
        .collect();
    for g in group.elements() {
        for h in group.elements() {
            let prod = mat_mul(ring, &transported[g as usize], &transported[h as usize]);
            if prod != transported[group.mul(g, h) as usize] {
                return Err(PseudoError::NotAHomomorphism { g, h });
            }
        }
        if mat_trace(ring, &transported[g as usize]) != mat_trace(ring, &rep[g as usize]) {
            return Err(PseudoError::TransportChangedTrace { g });
        }
    }
    Ok(transported)
}

/// Row rank of a set of F_p vectors by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn fp_rank(vectors: &mut [Vec<u64>], p: u64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..vectors.len()).find(|&r| !vectors[r][col].is_multiple_of(p)) else {
            continue;
        };
        vectors.swap(rank, pivot_row);
        let inv = crate::arith::invmod(vectors[rank][col] % p, p);
        for c in col..cols {
            vectors[rank][c] = vectors[rank][c] % p * inv % p;
        }
        for r in 0..vectors.len() {
            if r != rank && !vectors[r][col].is_multiple_of(p) {
                let factor = vectors[r][col] % p;
                for c in col..cols {
                    vectors[r][c] = (vectors[r][c] % p + (p - factor) * vectors[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
        if rank == vectors.len() {
            break;
        }
    }
    rank
}

/// dim H^1(G, chi) over F_p by brute force: cocycles are the solutions of
/// f(gh) = f(g) + chi(g) f(h); coboundaries are spanned by
/// g -> (chi(g) - 1) c.
pub fn brute_h1_dimension(group: &FiniteGroupPresentation, chi: &[u64], p: u64) -> usize {
    let n = group.size();
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n * n);
    for g in group.elements() {
        for h in group.elements() {
            let mut row = vec![0u64; n];
            let gh = group.mul(g, h) as usize;
            row[gh] = (row[gh] + 1) % p;
            row[g as usize] = (row[g as usize] + p - 1) % p;
            row[h as usize] = (row[h as usize] + p - chi[g as usize] % p) % p;
            rows.push(row);
        }
    }
    let rank = fp_rank(&mut rows, p);
    let dim_z1 = n - rank;
    let coboundary_nonzero = group.elements().any(|g| chi[g as usize] % p != 1 % p);
    let dim_b1 = usize::from(coboundary_nonzero);
    dim_z1 - dim_b1
}

/// All F_p-valued cocycles for the character chi, as a basis of the
/// solution space Z^1 (each cocycle an element-indexed table).
pub fn brute_z1_basis(group: &FiniteGroupPresentation, chi: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = group.size();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for g in group.elements() {
        for h in group.elements() {
            let mut row = vec![0u64; n];
            let gh = group.mul(g, h) as usize;
            row[gh] = (row[gh] + 1) % p;
            row[g as usize] = (row[g as usize] + p - 1) % p;
            row[h as usize] = (row[h as usize] + p - chi[g as usize] % p) % p;
            rows.push(row);
        }
    }
    nullspace_basis(&mut rows, n, p)
}

/// Basis of the nullspace of a row system over F_p with `cols` unknowns.
#[allow(clippy::needless_range_loop)]
pub fn nullspace_basis(rows: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    // reduce to row echelon form, tracking pivot columns
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = crate::arith::invmod(rows[rank][col] % p, p);
        for c in 0..cols {
            rows[rank][c] = rows[rank][c] % p * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_multiple_of(p) {
                let factor = rows[r][col] % p;
                for c in 0..cols {
                    rows[r][c] = (rows[r][c] % p + (p - factor) * rows[rank][c] % p) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free_col in 0..cols {
        if pivots.contains(&free_col) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free_col] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - rows[r][free_col] % p) % p;
        }
        basis.push(v);
    }
    basis
}

/// Characters of the group into F_p^*, enumerated as residue tables.
pub fn residual_characters(group: &FiniteGroupPresentation, p: u64) -> Vec<Vec<u64>> {
    let gens = group.generators();
    if gens.is_empty() {
        return vec![vec![1; group.size()]];
    }
    let tree = group.word_tree(gens).expect("generators generate");
    let units: Vec<u64> = (1..p).collect();
    let mut found = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let mut chi = vec![1u64; group.size()];
        for &e in &tree.order[1..] {
            let (parent, gi) = tree.parent_gen[e as usize];
            chi[e as usize] = chi[parent as usize] * units[choice[gi]] % p;
        }
        let multiplicative = group.elements().all(|g| {
            group
                .elements()
                .all(|h| chi[group.mul(g, h) as usize] == chi[g as usize] * chi[h as usize] % p)
        });
        if multiplicative {
            found.push(chi);
        }
        for i in (0..choice.len()).rev() {
            choice[i] += 1;
            if choice[i] < units.len() {
                continue 'outer;
            }
            choice[i] = 0;
            if i == 0 {
                break 'outer;
            }
        }
    }
    found.sort();
    found.dedup();
    found
}
