//! Small commutative local rings with explicit operation tables.
//!
//! The catalog covers the rings the laboratory needs: F_p, the dual numbers
//! F_p[e]/(e^2), the square-zero plane F_p[x,y]/(x,y)^2, and Z/p^2, plus
//! quotients of any of these by an ideal inside the maximal ideal. Elements
//! are table indices; all operations are lookups.

use super::PseudoError;
use std::rc::Rc;

/// Size cap that keeps exhaustive claims honest.
pub const MAX_RING_SIZE: usize = 625;

#[derive(Clone)]
pub struct FiniteLocalRing {
    tag: String,
    p: u64,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    /// u32::MAX marks a non-unit.
    inv: Vec<u32>,
    residue: Vec<u64>,
    names: Vec<String>,
    zero: u32,
    one: u32,
}

impl std::fmt::Debug for FiniteLocalRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteLocalRing({}, size {})", self.tag, self.size)
    }
}

const NON_UNIT: u32 = u32::MAX;

impl FiniteLocalRing {
    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn inverse(&self, a: u32) -> Option<u32> {
        match self.inv[a as usize] {
            NON_UNIT => None,
            x => Some(x),
        }
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.inv[a as usize] != NON_UNIT
    }

    pub fn in_maximal_ideal(&self, a: u32) -> bool {
        !self.is_unit(a)
    }

    /// Ring homomorphism onto the residue field F_p.
    pub fn residue(&self, a: u32) -> u64 {
        self.residue[a as usize]
    }

    pub fn name(&self, a: u32) -> &str {
        &self.names[a as usize]
    }

    pub fn from_int(&self, value: i64) -> u32 {
        let mut acc = self.zero;
        let v = value.rem_euclid(self.additive_order() as i64) as u64;
        for _ in 0..v {
            acc = self.add(acc, self.one);
        }
        acc
    }

    fn additive_order(&self) -> u64 {
        // order of 1 in the additive group: p for equal characteristic,
        // p^2 for Z/p^2-like rings
        let mut acc = self.one;
        let mut n = 1u64;
        while acc != self.zero {
            acc = self.add(acc, self.one);
            n += 1;
        }
        n
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size as u32
    }

    pub fn maximal_ideal_elements(&self) -> Vec<u32> {
        self.elements().filter(|&x| !self.is_unit(x)).collect()
    }

    pub fn units(&self) -> Vec<u32> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn from_tables(
        tag: String,
        p: u64,
        size: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        residue: Vec<u64>,
        names: Vec<String>,
        zero: u32,
        one: u32,
    ) -> Result<Rc<Self>, PseudoError> {
        if size > MAX_RING_SIZE {
            return Err(PseudoError::RingTooLarge {
                size,
                max: MAX_RING_SIZE,
            });
        }
        let mut ring = FiniteLocalRing {
            tag,
            p,
            size,
            add,
            mul,
            neg: vec![0; size],
            inv: vec![NON_UNIT; size],
            residue,
            names,
            zero,
            one,
        };
        for a in 0..size as u32 {
            let mut neg_found = false;
            for b in 0..size as u32 {
                if ring.add(a, b) == zero {
                    ring.neg[a as usize] = b;
                    neg_found = true;
                }
                if ring.mul(a, b) == one {
                    ring.inv[a as usize] = b;
                }
            }
            if !neg_found {
                return Err(PseudoError::NotARing("missing additive inverse"));
            }
        }
        ring.validate()?;
        Ok(Rc::new(ring))
    }

    fn validate(&self) -> Result<(), PseudoError> {
        let n = self.size as u32;
        if self.residue[self.zero as usize] != 0 || self.residue[self.one as usize] != 1 {
            return Err(PseudoError::NotARing("residue map misses 0 or 1"));
        }
        // residue map is a homomorphism onto F_p and the non-units are
        // exactly its kernel-of-unit condition (local ring)
        for a in 0..n {
            let ra = self.residue(a);
            if ra >= self.p {
                return Err(PseudoError::NotARing("residue out of range"));
            }
            if self.is_unit(a) == (ra == 0) {
                return Err(PseudoError::NotARing("units are not exactly residue-nonzero"));
            }
            for b in 0..n {
                if self.residue(self.add(a, b)) != (ra + self.residue(b)) % self.p {
                    return Err(PseudoError::NotARing("residue not additive"));
                }
                if self.residue(self.mul(a, b)) != ra * self.residue(b) % self.p {
                    return Err(PseudoError::NotARing("residue not multiplicative"));
                }
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(PseudoError::NotARing("not commutative"));
                }
            }
            if self.mul(a, self.one) != a || self.add(a, self.zero) != a {
                return Err(PseudoError::NotARing("identity fails"));
            }
        }
        // associativity and distributivity, exhaustively on small rings and
        // on a deterministic grid for larger ones
        let step = if self.size <= 128 { 1 } else { 7 };
        let mut a = 0u32;
        while a < n {
            let mut b = 0u32;
            while b < n {
                let mut c = 0u32;
                while c < n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(PseudoError::NotARing("multiplication not associative"));
                    }
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(PseudoError::NotARing("addition not associative"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(PseudoError::NotARing("not distributive"));
                    }
                    c += step;
                }
                b += step;
            }
            a += step;
        }
        Ok(())
    }

    fn check_odd_prime(p: u64) -> Result<(), PseudoError> {
        if p < 3 || !crate::arith::is_prime(p) {
            return Err(PseudoError::NotAnOddPrime(p));
        }
        Ok(())
    }

    /// The prime field F_p.
    pub fn prime_field(p: u64) -> Result<Rc<Self>, PseudoError> {
        Self::check_odd_prime(p)?;
        let n = p as usize;
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ((a + b) % n) as u32;
                mul[a * n + b] = ((a * b) % n) as u32;
            }
        }
        let residue = (0..n as u64).collect();
        let names = (0..n).map(|a| a.to_string()).collect();
        Self::from_tables(format!("F_{p}"), p, n, add, mul, residue, names, 0, 1)
    }

    /// The dual numbers F_p[e]/(e^2). Element index a + p*b encodes a + b e.
    pub fn dual_numbers(p: u64) -> Result<Rc<Self>, PseudoError> {
        Self::check_odd_prime(p)?;
        let pu = p as usize;
        let n = pu * pu;
        let encode = |a: usize, b: usize| (a + pu * b) as u32;
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            let (a1, b1) = (i % pu, i / pu);
            for j in 0..n {
                let (a2, b2) = (j % pu, j / pu);
                add[i * n + j] = encode((a1 + a2) % pu, (b1 + b2) % pu);
                mul[i * n + j] = encode(a1 * a2 % pu, (a1 * b2 + a2 * b1) % pu);
            }
        }
        let residue = (0..n).map(|i| (i % pu) as u64).collect();
        let names = (0..n)
            .map(|i| match (i % pu, i / pu) {
                (a, 0) => a.to_string(),
                (0, b) => format!("{b}e"),
                (a, b) => format!("{a}+{b}e"),
            })
            .collect();
        Self::from_tables(format!("F_{p}[e]/(e^2)"), p, n, add, mul, residue, names, 0, 1)
    }

    /// The square-zero plane F_p[x,y]/(x,y)^2. Index a + p*b + p^2*c encodes
    /// a + b x + c y.
    pub fn square_zero_plane(p: u64) -> Result<Rc<Self>, PseudoError> {
        Self::check_odd_prime(p)?;
        let pu = p as usize;
        let n = pu * pu * pu;
        let encode = |a: usize, b: usize, c: usize| (a + pu * b + pu * pu * c) as u32;
        let decode = |i: usize| (i % pu, (i / pu) % pu, i / (pu * pu));
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            let (a1, b1, c1) = decode(i);
            for j in 0..n {
                let (a2, b2, c2) = decode(j);
                add[i * n + j] = encode((a1 + a2) % pu, (b1 + b2) % pu, (c1 + c2) % pu);
                mul[i * n + j] = encode(
                    a1 * a2 % pu,
                    (a1 * b2 + a2 * b1) % pu,
                    (a1 * c2 + a2 * c1) % pu,
                );
            }
        }
        let residue = (0..n).map(|i| (i % pu) as u64).collect();
        let names = (0..n)
            .map(|i| {
                let (a, b, c) = decode(i);
                let mut parts = Vec::new();
                if a != 0 {
                    parts.push(a.to_string());
                }
                if b != 0 {
                    parts.push(if b == 1 { "x".into() } else { format!("{b}x") });
                }
                if c != 0 {
                    parts.push(if c == 1 { "y".into() } else { format!("{c}y") });
                }
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join("+")
                }
            })
            .collect();
        Self::from_tables(
            format!("F_{p}[x,y]/(x,y)^2"),
            p,
            n,
            add,
            mul,
            residue,
            names,
            0,
            1,
        )
    }

    /// The unramified-thickness ring Z/p^2.
    pub fn z_mod_p_squared(p: u64) -> Result<Rc<Self>, PseudoError> {
        Self::check_odd_prime(p)?;
        let n = (p * p) as usize;
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ((a + b) % n) as u32;
                mul[a * n + b] = ((a * b) % n) as u32;
            }
        }
        let residue = (0..n).map(|a| (a as u64) % p).collect();
        let names = (0..n).map(|a| a.to_string()).collect();
        Self::from_tables(format!("Z/{}", p * p), p, n, add, mul, residue, names, 0, 1)
    }

    /// The ideal generated by `gens`: the additive and R-multiplicative
    /// closure.
    pub fn ideal_generated_by(&self, gens: &[u32]) -> Vec<u32> {
        let mut in_ideal = vec![false; self.size];
        in_ideal[self.zero as usize] = true;
        let mut frontier: Vec<u32> = vec![self.zero];
        for &g in gens {
            if !in_ideal[g as usize] {
                in_ideal[g as usize] = true;
                frontier.push(g);
            }
        }
        while let Some(x) = frontier.pop() {
            for r in self.elements() {
                let rx = self.mul(r, x);
                if !in_ideal[rx as usize] {
                    in_ideal[rx as usize] = true;
                    frontier.push(rx);
                }
            }
            for y in 0..self.size as u32 {
                if in_ideal[y as usize] {
                    let s = self.add(x, y);
                    if !in_ideal[s as usize] {
                        in_ideal[s as usize] = true;
                        frontier.push(s);
                    }
                }
            }
        }
        (0..self.size as u32).filter(|&x| in_ideal[x as usize]).collect()
    }

    /// Quotient by the ideal generated by `gens`, which must lie in the
    /// maximal ideal. Returns the quotient ring and the projection map from
    /// old element indices to new ones.
    pub fn quotient(&self, gens: &[u32]) -> Result<(Rc<FiniteLocalRing>, Vec<u32>), PseudoError> {
        for &g in gens {
            if self.is_unit(g) {
                return Err(PseudoError::QuotientIdealNotProper);
            }
        }
        let ideal = self.ideal_generated_by(gens);
        // coset representative: smallest index in x + I
        let rep = |x: u32| -> u32 { ideal.iter().map(|&i| self.add(x, i)).min().unwrap() };
        let reps: Vec<u32> = (0..self.size as u32).map(rep).collect();
        let mut sorted: Vec<u32> = {
            let mut s: Vec<u32> = reps.clone();
            s.sort_unstable();
            s.dedup();
            s
        };
        sorted.sort_unstable();
        let index_of = |r: u32| sorted.binary_search(&r).unwrap() as u32;
        let projection: Vec<u32> = reps.iter().map(|&r| index_of(r)).collect();
        let n = sorted.len();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for (i, &a) in sorted.iter().enumerate() {
            for (j, &b) in sorted.iter().enumerate() {
                add[i * n + j] = projection[self.add(a, b) as usize];
                mul[i * n + j] = projection[self.mul(a, b) as usize];
            }
        }
        let residue: Vec<u64> = sorted.iter().map(|&a| self.residue(a)).collect();
        let names: Vec<String> = sorted.iter().map(|&a| format!("[{}]", self.name(a))).collect();
        let zero = projection[self.zero as usize];
        let one = projection[self.one as usize];
        let tag = format!("{}/({} gens)", self.tag, gens.len());
        let ring = Self::from_tables(tag, self.p, n, add, mul, residue, names, zero, one)?;
        Ok((ring, projection))
    }
}
