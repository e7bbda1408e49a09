//! Finite group presentations with verified multiplication tables.
//!
//! Catalog: cyclic groups, dihedral groups (including S_3 = D_3),
//! generalized dihedral groups C_2 ⋉ (C_n × C_m) with the inversion action,
//! and direct products. Associativity, inverses, and the generating
//! property are all verified at construction.

use super::PseudoError;
use std::rc::Rc;

pub const MAX_GROUP_SIZE: usize = 64;

#[derive(Clone)]
pub struct FiniteGroupPresentation {
    tag: String,
    size: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    identity: u16,
    generators: Vec<u16>,
}

impl std::fmt::Debug for FiniteGroupPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroupPresentation({}, order {})", self.tag, self.size)
    }
}

/// A spanning tree over the Cayley graph: for every non-identity element, a
/// parent element and generator index with `element = parent * generator`.
/// Elements are listed in BFS order starting from the identity, so a
/// representation can be extended generator-by-generator along `order`.
#[derive(Debug, Clone)]
pub struct WordTree {
    pub order: Vec<u16>,
    /// Indexed by element: (parent, generator index); the identity entry is
    /// (identity, usize::MAX) and unused.
    pub parent_gen: Vec<(u16, usize)>,
}

impl FiniteGroupPresentation {
    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> u16 {
        self.identity
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    pub fn generators(&self) -> &[u16] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.size as u16
    }

    pub fn element_order(&self, a: u16) -> usize {
        let mut acc = a;
        let mut n = 1;
        while acc != self.identity {
            acc = self.mul(acc, a);
            n += 1;
        }
        n
    }

    fn from_table(
        tag: String,
        size: usize,
        mul: Vec<u16>,
        identity: u16,
        generators: Vec<u16>,
    ) -> Result<Rc<Self>, PseudoError> {
        if size > MAX_GROUP_SIZE {
            return Err(PseudoError::GroupTooLarge {
                size,
                max: MAX_GROUP_SIZE,
            });
        }
        let mut group = FiniteGroupPresentation {
            tag,
            size,
            mul,
            inv: vec![0; size],
            identity,
            generators,
        };
        let n = size as u16;
        for a in 0..n {
            if group.mul(a, identity) != a || group.mul(identity, a) != a {
                return Err(PseudoError::NotAGroup("identity fails"));
            }
            let mut found = false;
            for b in 0..n {
                if group.mul(a, b) == identity && group.mul(b, a) == identity {
                    group.inv[a as usize] = b;
                    found = true;
                }
            }
            if !found {
                return Err(PseudoError::NotAGroup("missing inverse"));
            }
            for b in 0..n {
                for c in 0..n {
                    if group.mul(group.mul(a, b), c) != group.mul(a, group.mul(b, c)) {
                        return Err(PseudoError::NotAGroup("not associative"));
                    }
                }
            }
        }
        if group.word_tree(&group.generators).is_none() {
            return Err(PseudoError::GeneratorsDontGenerate);
        }
        Ok(Rc::new(group))
    }

    /// BFS spanning tree over the given generators; None if they do not
    /// generate the whole group.
    pub fn word_tree(&self, generators: &[u16]) -> Option<WordTree> {
        let mut seen = vec![false; self.size];
        let mut parent_gen = vec![(self.identity, usize::MAX); self.size];
        let mut order = vec![self.identity];
        seen[self.identity as usize] = true;
        let mut head = 0;
        while head < order.len() {
            let cur = order[head];
            head += 1;
            for (gi, &g) in generators.iter().enumerate() {
                let next = self.mul(cur, g);
                if !seen[next as usize] {
                    seen[next as usize] = true;
                    parent_gen[next as usize] = (cur, gi);
                    order.push(next);
                }
            }
        }
        if order.len() == self.size {
            Some(WordTree { order, parent_gen })
        } else {
            None
        }
    }

    /// Elements of the subgroup generated by the given generators, in BFS
    /// order, with the same tree structure restricted to the subgroup.
    pub fn subgroup_tree(&self, generators: &[u16]) -> WordTree {
        let mut seen = vec![false; self.size];
        let mut parent_gen = vec![(self.identity, usize::MAX); self.size];
        let mut order = vec![self.identity];
        seen[self.identity as usize] = true;
        let mut head = 0;
        while head < order.len() {
            let cur = order[head];
            head += 1;
            for (gi, &g) in generators.iter().enumerate() {
                let next = self.mul(cur, g);
                if !seen[next as usize] {
                    seen[next as usize] = true;
                    parent_gen[next as usize] = (cur, gi);
                    order.push(next);
                }
            }
        }
        WordTree { order, parent_gen }
    }

    /// The cyclic group of order n, generated by one element.
    pub fn cyclic(n: usize) -> Result<Rc<Self>, PseudoError> {
        assert!(n >= 1);
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = ((a + b) % n) as u16;
            }
        }
        let generators = if n > 1 { vec![1u16] } else { Vec::new() };
        Self::from_table(format!("C{n}"), n, mul, 0, generators)
    }

    /// The dihedral group of order 2n in the presentation
    /// r^n = s^2 = 1, s r s = r^{-1}. Elements s^a r^k are encoded as
    /// a*n + k; generators are r and s.
    pub fn dihedral(n: usize) -> Result<Rc<Self>, PseudoError> {
        assert!(n >= 1);
        let size = 2 * n;
        let encode = |a: usize, k: usize| (a * n + k) as u16;
        let mut mul = vec![0u16; size * size];
        for a1 in 0..2 {
            for k1 in 0..n {
                for a2 in 0..2 {
                    for k2 in 0..n {
                        // s^a1 r^k1 s^a2 r^k2 = s^(a1+a2) r^(k1*(-1)^a2 + k2)
                        let k = if a2 == 1 { (n - k1) % n } else { k1 };
                        let lhs = encode(a1, k1) as usize;
                        let rhs = encode(a2, k2) as usize;
                        mul[lhs * size + rhs] = encode((a1 + a2) % 2, (k + k2) % n);
                    }
                }
            }
        }
        let generators = vec![encode(0, 1 % n), encode(1, 0)];
        let tag = if n == 3 { "S3".to_string() } else { format!("D{n}") };
        Self::from_table(tag, size, mul, 0, generators)
    }

    /// The symmetric group on three letters, as the dihedral group of
    /// order 6.
    pub fn s3() -> Result<Rc<Self>, PseudoError> {
        Self::dihedral(3)
    }

    /// The generalized dihedral group C_2 ⋉ (C_n × C_m), the involution
    /// acting by inversion on both factors. Elements (a, j, k) are encoded
    /// as a*n*m + j*m + k; generators are the involution and the two
    /// translations (one translation when a factor is trivial).
    pub fn generalized_dihedral(n: usize, m: usize) -> Result<Rc<Self>, PseudoError> {
        assert!(n >= 1 && m >= 1);
        let size = 2 * n * m;
        let encode = |a: usize, j: usize, k: usize| (a * n * m + j * m + k) as u16;
        let mut mul = vec![0u16; size * size];
        for a1 in 0..2 {
            for j1 in 0..n {
                for k1 in 0..m {
                    for a2 in 0..2 {
                        for j2 in 0..n {
                            for k2 in 0..m {
                                let (j, k) = if a2 == 1 {
                                    ((n - j1) % n, (m - k1) % m)
                                } else {
                                    (j1, k1)
                                };
                                let lhs = encode(a1, j1, k1) as usize;
                                let rhs = encode(a2, j2, k2) as usize;
                                mul[lhs * size + rhs] =
                                    encode((a1 + a2) % 2, (j + j2) % n, (k + k2) % m);
                            }
                        }
                    }
                }
            }
        }
        let mut generators = vec![encode(1, 0, 0)];
        if n > 1 {
            generators.push(encode(0, 1, 0));
        }
        if m > 1 {
            generators.push(encode(0, 0, 1));
        }
        Self::from_table(format!("Dih({n}x{m})"), size, mul, 0, generators)
    }

    /// Direct product; generators are the factor generators embedded on
    /// each side.
    pub fn direct_product(g: &Self, h: &Self) -> Result<Rc<Self>, PseudoError> {
        let size = g.size * h.size;
        let encode = |a: u16, b: u16| a as usize * h.size + b as usize;
        let mut mul = vec![0u16; size * size];
        for a1 in 0..g.size as u16 {
            for b1 in 0..h.size as u16 {
                for a2 in 0..g.size as u16 {
                    for b2 in 0..h.size as u16 {
                        mul[encode(a1, b1) * size + encode(a2, b2)] =
                            encode(g.mul(a1, a2), h.mul(b1, b2)) as u16;
                    }
                }
            }
        }
        let mut generators = Vec::new();
        for &x in &g.generators {
            generators.push(encode(x, h.identity) as u16);
        }
        for &y in &h.generators {
            generators.push(encode(g.identity, y) as u16);
        }
        let identity = encode(g.identity, h.identity) as u16;
        Self::from_table(format!("{}x{}", g.tag, h.tag), size, mul, identity, generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        let c6 = FiniteGroupPresentation::cyclic(6).unwrap();
        assert_eq!(c6.size(), 6);
        assert_eq!(c6.element_order(1), 6);
        assert_eq!(c6.element_order(2), 3);
        assert_eq!(c6.inv(1), 5);
    }

    #[test]
    fn dihedral_relations() {
        let d4 = FiniteGroupPresentation::dihedral(4).unwrap();
        let r = d4.generators()[0];
        let s = d4.generators()[1];
        assert_eq!(d4.element_order(r), 4);
        assert_eq!(d4.element_order(s), 2);
        // s r s = r^{-1}
        assert_eq!(d4.mul(d4.mul(s, r), s), d4.inv(r));
    }

    #[test]
    fn s3_is_order_six_nonabelian() {
        let s3 = FiniteGroupPresentation::s3().unwrap();
        assert_eq!(s3.size(), 6);
        let r = s3.generators()[0];
        let s = s3.generators()[1];
        assert_ne!(s3.mul(r, s), s3.mul(s, r));
    }

    #[test]
    fn generalized_dihedral_structure() {
        let g = FiniteGroupPresentation::generalized_dihedral(3, 3).unwrap();
        assert_eq!(g.size(), 18);
        let sigma = g.generators()[0];
        let e1 = g.generators()[1];
        let e2 = g.generators()[2];
        assert_eq!(g.element_order(sigma), 2);
        assert_eq!(g.element_order(e1), 3);
        // sigma e sigma = e^{-1}
        assert_eq!(g.mul(g.mul(sigma, e1), sigma), g.inv(e1));
        assert_eq!(g.mul(g.mul(sigma, e2), sigma), g.inv(e2));
        // the translations commute
        assert_eq!(g.mul(e1, e2), g.mul(e2, e1));
    }

    #[test]
    fn direct_products() {
        let c2 = FiniteGroupPresentation::cyclic(2).unwrap();
        let c3 = FiniteGroupPresentation::cyclic(3).unwrap();
        let g = FiniteGroupPresentation::direct_product(&c2, &c3).unwrap();
        assert_eq!(g.size(), 6);
        assert_eq!(g.generators().len(), 2);
    }

    #[test]
    fn word_tree_covers_group() {
        let g = FiniteGroupPresentation::generalized_dihedral(3, 3).unwrap();
        let tree = g.word_tree(g.generators()).unwrap();
        assert_eq!(tree.order.len(), 18);
        // every non-identity element satisfies elem = parent * gen
        for &e in &tree.order[1..] {
            let (parent, gi) = tree.parent_gen[e as usize];
            assert_eq!(g.mul(parent, g.generators()[gi]), e);
        }
        // two generators do not generate Dih(3x3)
        let partial = g.subgroup_tree(&g.generators()[0..2]);
        assert_eq!(partial.order.len(), 6);
    }
}
