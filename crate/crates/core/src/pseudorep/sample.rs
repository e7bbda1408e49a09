//! Deterministic sampling of honest representations, and exhaustive
//! enumeration of the deformations of a residual representation.

use super::group::FiniteGroupPresentation;
use super::ring::FiniteLocalRing;
use super::table::{extend_to_representation, is_character, mat_mul};
use super::PseudoError;
use std::rc::Rc;

/// SplitMix64: a tiny deterministic generator, good enough for sampling.
#[derive(Debug, Clone)]
pub struct SampleRng(u64);

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        SampleRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn pick<'a, T>(&mut self, slice: &'a [T]) -> &'a T {
        &slice[self.below(slice.len())]
    }
}

fn unit_pow(ring: &FiniteLocalRing, u: u32, e: usize) -> u32 {
    let mut acc = ring.one();
    for _ in 0..e {
        acc = ring.mul(acc, u);
    }
    acc
}

/// All characters of the group with values in the units of R, enumerated
/// via generator images restricted to torsion units of the right order.
pub fn all_characters(ring: &FiniteLocalRing, group: &FiniteGroupPresentation) -> Vec<Vec<u32>> {
    let gens = group.generators();
    if gens.is_empty() {
        return vec![vec![ring.one(); group.size()]];
    }
    let tree = group.word_tree(gens).expect("generators generate");
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            let order = group.element_order(g);
            ring.units()
                .into_iter()
                .filter(|&u| unit_pow(ring, u, order) == ring.one())
                .collect()
        })
        .collect();
    if candidates.iter().any(|c: &Vec<u32>| c.is_empty()) {
        return Vec::new();
    }
    let mut found = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let mut eta = vec![ring.one(); group.size()];
        for &e in &tree.order[1..] {
            let (parent, gi) = tree.parent_gen[e as usize];
            eta[e as usize] = ring.mul(eta[parent as usize], candidates[gi][choice[gi]]);
        }
        if is_character(ring, group, &eta) {
            found.push(eta);
        }
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
    found.sort();
    found.dedup();
    found
}

/// A random invertible 2x2 matrix over R together with its inverse.
pub fn random_gl2(ring: &FiniteLocalRing, rng: &mut SampleRng) -> ([u32; 4], [u32; 4]) {
    loop {
        let m = [
            rng.below(ring.size()) as u32,
            rng.below(ring.size()) as u32,
            rng.below(ring.size()) as u32,
            rng.below(ring.size()) as u32,
        ];
        let det = ring.sub(ring.mul(m[0], m[3]), ring.mul(m[1], m[2]));
        if let Some(det_inv) = ring.inverse(det) {
            let inv = [
                ring.mul(det_inv, m[3]),
                ring.mul(det_inv, ring.neg(m[1])),
                ring.mul(det_inv, ring.neg(m[2])),
                ring.mul(det_inv, m[0]),
            ];
            return (m, inv);
        }
    }
}

/// Monomial generator images for dihedral-type groups: an involution
/// generator whose conjugation inverts every other generator goes to the
/// swap matrix, the others to diag(z, z^{-1}) with z a torsion unit of the
/// right order. None when the group has no such structure.
fn monomial_candidate(
    ring: &FiniteLocalRing,
    group: &FiniteGroupPresentation,
    rng: &mut SampleRng,
) -> Option<Vec<[u32; 4]>> {
    let gens = group.generators();
    let swap_pos = gens.iter().position(|&t| {
        group.element_order(t) == 2
            && gens
                .iter()
                .all(|&g| g == t || group.mul(group.mul(t, g), t) == group.inv(g))
    })?;
    let mut images = Vec::with_capacity(gens.len());
    for (i, &g) in gens.iter().enumerate() {
        if i == swap_pos {
            images.push([ring.zero(), ring.one(), ring.one(), ring.zero()]);
        } else {
            let order = group.element_order(g);
            let torsion: Vec<u32> = ring
                .units()
                .into_iter()
                .filter(|&u| unit_pow(ring, u, order) == ring.one())
                .collect();
            let z = *rng.pick(&torsion);
            let z_inv = ring.inverse(z).expect("torsion units are invertible");
            images.push([z, ring.zero(), ring.zero(), z_inv]);
        }
    }
    Some(images)
}

/// A random honest representation as generator images: a conjugated
/// diagonal pair of characters, or (when available) a conjugated monomial
/// representation. The result is validated before being returned.
pub fn sample_representation(
    ring: &Rc<FiniteLocalRing>,
    group: &Rc<FiniteGroupPresentation>,
    characters: &[Vec<u32>],
    rng: &mut SampleRng,
) -> Result<Vec<[u32; 4]>, PseudoError> {
    let gens = group.generators();
    let base = if rng.below(2) == 0 {
        match monomial_candidate(ring, group, rng) {
            Some(images) if extend_to_representation(ring, group, &images).is_ok() => images,
            _ => diagonal_images(ring, gens, characters, rng),
        }
    } else {
        diagonal_images(ring, gens, characters, rng)
    };
    let (p, p_inv) = random_gl2(ring, rng);
    let conjugated: Vec<[u32; 4]> = base
        .iter()
        .map(|m| mat_mul(ring, &mat_mul(ring, &p, m), &p_inv))
        .collect();
    extend_to_representation(ring, group, &conjugated)?;
    Ok(conjugated)
}

fn diagonal_images(
    ring: &FiniteLocalRing,
    gens: &[u16],
    characters: &[Vec<u32>],
    rng: &mut SampleRng,
) -> Vec<[u32; 4]> {
    let eta1 = rng.pick(characters);
    let eta2 = rng.pick(characters);
    gens.iter()
        .map(|&g| {
            [
                eta1[g as usize],
                ring.zero(),
                ring.zero(),
                eta2[g as usize],
            ]
        })
        .collect()
}

/// All lifts of the given residual generator images that are honest
/// representations over R. Every matrix entry ranges over its residue
/// class, so the tuple count is (size/p)^(4·#gens): exhaustive and only
/// for desk-sized inputs. Deterministic enumeration order.
pub fn enumerate_deformations(
    ring: &Rc<FiniteLocalRing>,
    group: &Rc<FiniteGroupPresentation>,
    residual_images: &[[u64; 4]],
) -> Vec<Vec<[u32; 4]>> {
    let gens = group.generators();
    assert_eq!(residual_images.len(), gens.len());
    let p = ring.p();
    let mut class: Vec<Vec<u32>> = vec![Vec::new(); p as usize];
    for x in ring.elements() {
        class[ring.residue(x) as usize].push(x);
    }
    let per_entry: Vec<&Vec<u32>> = residual_images
        .iter()
        .flat_map(|m| m.iter().map(|&r| &class[r as usize]))
        .collect();
    let entries = per_entry.len();
    let mut found = Vec::new();
    let mut choice = vec![0usize; entries];
    'outer: loop {
        let mut images: Vec<[u32; 4]> = Vec::with_capacity(gens.len());
        for gi in 0..gens.len() {
            images.push([
                per_entry[4 * gi][choice[4 * gi]],
                per_entry[4 * gi + 1][choice[4 * gi + 1]],
                per_entry[4 * gi + 2][choice[4 * gi + 2]],
                per_entry[4 * gi + 3][choice[4 * gi + 3]],
            ]);
        }
        if extend_to_representation(ring, group, &images).is_ok() {
            found.push(images);
        }
        for i in (0..entries).rev() {
            choice[i] += 1;
            if choice[i] < per_entry[i].len() {
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
