//! Structural analysis of complete local rings presented as
//! F[[x_1..x_n]]/I for a monomial ideal I.
//!
//! For monomial ideals everything is combinatorial and exact: minimal
//! primes are the minimal hitting sets of the generator supports, Krull
//! dimension is n minus the smallest such hitting set, the ideal is radical
//! iff its generators are squarefree, and the complete-intersection
//! question reduces to comparing the Nakayama generator count with the
//! height.

use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum IdealError {
    #[error("variable sets differ")]
    VariableMismatch,
    #[error("the unit ideal presents the zero ring; {0} is undefined")]
    UnitIdeal(&'static str),
    #[error("degree-one generator present; eliminate linear variables before the CI test")]
    DegreeOneGenerator,
    #[error("at most {max} variables supported, got {got}")]
    TooManyVariables { got: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Supported variable count for minimal-prime enumeration.
pub const MAX_VARIABLES: usize = 16;

/// A monomial ideal in named variables, stored by its unique minimal
/// monomial generating set (no generator divides another).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    gens: Vec<Vec<u16>>,
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn total_degree(m: &[u16]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

impl MonomialIdeal {
    /// Build an ideal from a raw generator list, minimalizing it: divisible
    /// generators are dropped, duplicates removed, and the rest canonically
    /// ordered. The result's generator count is the Nakayama minimal
    /// generator count.
    pub fn new(vars: Vec<String>, raw_gens: Vec<Vec<u16>>) -> Result<Self, IdealError> {
        if vars.len() > MAX_VARIABLES {
            return Err(IdealError::TooManyVariables {
                got: vars.len(),
                max: MAX_VARIABLES,
            });
        }
        for g in &raw_gens {
            assert_eq!(g.len(), vars.len(), "exponent vector length mismatch");
        }
        let mut gens: Vec<Vec<u16>> = Vec::new();
        for g in raw_gens {
            if gens.iter().any(|h| divides(h, &g)) {
                continue;
            }
            gens.retain(|h| !divides(&g, h));
            gens.push(g);
        }
        gens.sort_by(|a, b| total_degree(a).cmp(&total_degree(b)).then_with(|| a.cmp(b)));
        Ok(MonomialIdeal { vars, gens })
    }

    pub fn zero_ideal(vars: Vec<String>) -> Result<Self, IdealError> {
        Self::new(vars, Vec::new())
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn num_variables(&self) -> usize {
        self.vars.len()
    }

    /// The minimal generators, canonically ordered.
    pub fn generators(&self) -> &[Vec<u16>] {
        &self.gens
    }

    /// The Nakayama minimal number of generators.
    pub fn minimal_generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// True iff 1 is a generator, i.e. the quotient is the zero ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.gens.iter().any(|g| total_degree(g) == 0)
    }

    /// Monomial membership: some generator divides the monomial.
    pub fn contains_monomial(&self, mono: &[u16]) -> bool {
        assert_eq!(mono.len(), self.vars.len());
        self.gens.iter().any(|g| divides(g, mono))
    }

    /// Minimal primes, each a set of variable indices (the prime generated
    /// by those variables). Computed as the minimal hitting sets of the
    /// generator supports. The zero ideal has the single minimal prime (0);
    /// the unit ideal has none.
    pub fn minimal_primes(&self) -> Vec<Vec<usize>> {
        if self.is_unit_ideal() {
            return Vec::new();
        }
        let supports: Vec<BTreeSet<usize>> = self
            .gens
            .iter()
            .map(|g| {
                g.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut current = BTreeSet::new();
        hit(&supports, 0, &mut current, &mut found);
        // keep only inclusion-minimal hitting sets
        let minimal: Vec<BTreeSet<usize>> = found
            .iter()
            .filter(|s| !found.iter().any(|t| t.len() < s.len() && t.is_subset(s)))
            .cloned()
            .collect();
        let mut out: Vec<Vec<usize>> = minimal
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        out.sort();
        out
    }

    /// Krull dimension of the quotient ring: n minus the size of the
    /// smallest minimal prime.
    pub fn krull_dimension(&self) -> Result<usize, IdealError> {
        if self.is_unit_ideal() {
            return Err(IdealError::UnitIdeal("Krull dimension"));
        }
        let min_prime = self
            .minimal_primes()
            .iter()
            .map(|p| p.len())
            .min()
            .expect("a proper monomial ideal has a minimal prime");
        Ok(self.vars.len() - min_prime)
    }

    /// Height of the ideal: n minus the Krull dimension of the quotient.
    pub fn height(&self) -> Result<usize, IdealError> {
        Ok(self.vars.len() - self.krull_dimension()?)
    }

    /// A monomial ideal is radical iff every minimal generator is
    /// squarefree.
    pub fn is_reduced(&self) -> bool {
        self.gens.iter().all(|g| g.iter().all(|&e| e <= 1))
    }

    /// Intersection, generated by the pairwise lcms of the generators and
    /// minimalized.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        if self.vars != other.vars {
            return Err(IdealError::VariableMismatch);
        }
        if self.is_unit_ideal() {
            return Ok(other.clone());
        }
        if other.is_unit_ideal() {
            return Ok(self.clone());
        }
        let mut raw = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                raw.push(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect());
            }
        }
        MonomialIdeal::new(self.vars.clone(), raw)
    }

    /// Containment via generator-wise divisibility.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool, IdealError> {
        if self.vars != other.vars {
            return Err(IdealError::VariableMismatch);
        }
        Ok(other.gens.iter().all(|g| self.contains_monomial(g)))
    }

    /// Complete-intersection certificate: for an ideal inside the square of
    /// the maximal ideal, the quotient is CI iff the minimal generator
    /// count equals the height. Degree-one generators are rejected because
    /// Nakayama counting is only faithful after eliminating them.
    pub fn is_complete_intersection(&self) -> Result<CiCertificate, IdealError> {
        if self.is_unit_ideal() {
            return Err(IdealError::UnitIdeal("the CI certificate"));
        }
        if self.gens.iter().any(|g| total_degree(g) == 1) {
            return Err(IdealError::DegreeOneGenerator);
        }
        let mu = self.minimal_generator_count();
        let height = self.height()?;
        Ok(CiCertificate {
            mu,
            height,
            complete_intersection: mu == height,
        })
    }

    /// Dimension of the Zariski tangent space of the quotient: n minus the
    /// number of degree-one minimal generators.
    pub fn tangent_dimension(&self) -> usize {
        let linear = self.gens.iter().filter(|g| total_degree(g) == 1).count();
        self.vars.len() - linear
    }

    /// Render a monomial in this ideal's variables, `1` for the empty one.
    pub fn render_monomial(&self, mono: &[u16]) -> String {
        let parts: Vec<String> = mono
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Canonical rendering of the generator list, `(0)` for the zero ideal.
    pub fn render(&self) -> String {
        if self.gens.is_empty() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| self.render_monomial(g)).collect();
        format!("({})", parts.join(", "))
    }
}

fn hit(
    supports: &[BTreeSet<usize>],
    idx: usize,
    current: &mut BTreeSet<usize>,
    found: &mut BTreeSet<BTreeSet<usize>>,
) {
    if idx == supports.len() {
        found.insert(current.clone());
        return;
    }
    if supports[idx].iter().any(|v| current.contains(v)) {
        hit(supports, idx + 1, current, found);
        return;
    }
    for &v in &supports[idx] {
        current.insert(v);
        hit(supports, idx + 1, current, found);
        current.remove(&v);
    }
}

/// Certificate returned by the complete-intersection test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CiCertificate {
    pub mu: usize,
    pub height: usize,
    pub complete_intersection: bool,
}

/// Parse a comma-separated variable list, e.g. `X, Y, Z, T1, T2`.
pub fn parse_variables(text: &str) -> Result<Vec<String>, IdealError> {
    let vars: Vec<String> = text
        .split(',')
        .map(|v| v.trim().to_string())
        .filter(|v| !v.is_empty())
        .collect();
    if vars.is_empty() {
        return Err(IdealError::Parse("empty variable list".into()));
    }
    for v in &vars {
        if !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(IdealError::Parse(format!("bad variable name `{v}`")));
        }
        if v.chars().next().unwrap().is_ascii_digit() {
            return Err(IdealError::Parse(format!("variable `{v}` starts with a digit")));
        }
    }
    let unique: BTreeSet<&String> = vars.iter().collect();
    if unique.len() != vars.len() {
        return Err(IdealError::Parse("duplicate variable".into()));
    }
    Ok(vars)
}

/// Parse a generator list in the `X1*X2, X1*Y, X2*Y` syntax (powers as
/// `X^2`). `0` or an empty list gives the zero ideal, `1` the unit ideal.
pub fn parse_ideal(variables: &str, generators: &str) -> Result<MonomialIdeal, IdealError> {
    let vars = parse_variables(variables)?;
    let gen_text = generators.trim();
    if gen_text.is_empty() || gen_text == "0" {
        return MonomialIdeal::zero_ideal(vars);
    }
    let mut raw = Vec::new();
    for gen in gen_text.split(',') {
        let gen = gen.trim();
        if gen.is_empty() {
            return Err(IdealError::Parse("empty generator".into()));
        }
        let mut expo = vec![0u16; vars.len()];
        if gen == "1" {
            raw.push(expo);
            continue;
        }
        for factor in gen.split('*') {
            let factor = factor.trim();
            let (name, power) = match factor.split_once('^') {
                Some((n, p)) => {
                    let power: u16 = p
                        .trim()
                        .parse()
                        .map_err(|_| IdealError::Parse(format!("bad exponent in `{factor}`")))?;
                    (n.trim(), power)
                }
                None => (factor, 1),
            };
            let idx = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| IdealError::Parse(format!("unknown variable `{name}`")))?;
            expo[idx] += power;
        }
        raw.push(expo);
    }
    MonomialIdeal::new(vars, raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(vars: &str, gens: &str) -> MonomialIdeal {
        parse_ideal(vars, gens).unwrap()
    }

    #[test]
    fn minimalization() {
        let i = ideal("X", "X, X^2");
        assert_eq!(i.render(), "(X)");
        assert_eq!(i.minimal_generator_count(), 1);

        let j = ideal("X1, X2, Y, Z, W", "X1*X2, X1*Y, X2*Y");
        assert_eq!(j.minimal_generator_count(), 3);

        let zero = ideal("X, Y", "0");
        assert_eq!(zero.minimal_generator_count(), 0);
        assert_eq!(zero.render(), "(0)");
    }

    #[test]
    fn minimal_primes_examples() {
        // three pairwise products in five variables
        let i = ideal("X1, X2, Y, Z, W", "X1*X2, X1*Y, X2*Y");
        let primes = i.minimal_primes();
        assert_eq!(primes, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);

        let j = ideal("X1, X2, X3, X4", "X2*X4");
        assert_eq!(j.minimal_primes(), vec![vec![1], vec![3]]);

        let zero = ideal("X, Y, Z", "0");
        assert_eq!(zero.minimal_primes(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn krull_dimension_examples() {
        assert_eq!(ideal("X1, X2, Y, Z, W", "X1*X2, X1*Y, X2*Y").krull_dimension(), Ok(3));
        assert_eq!(ideal("X1, X2, X3, X4", "X2*X4").krull_dimension(), Ok(3));
        assert_eq!(ideal("X, Y, Z", "0").krull_dimension(), Ok(3));
        assert!(ideal("X, Y", "1").krull_dimension().is_err());
    }

    #[test]
    fn reducedness() {
        assert!(ideal("X1, X2, Y", "X1*X2, X1*Y, X2*Y").is_reduced());
        assert!(!ideal("X", "X^2").is_reduced());
        assert!(ideal("X, Y", "0").is_reduced());
    }

    #[test]
    fn intersection_examples() {
        let vars = "X1, X2, Y, Z, W";
        let p1 = ideal(vars, "Y, X1");
        let p2 = ideal(vars, "Y, X2");
        let p3 = ideal(vars, "X1, X2");

        let first = p1.intersect(&p2).unwrap();
        assert_eq!(first, ideal(vars, "Y, X1*X2"));

        let second = first.intersect(&p3).unwrap();
        assert_eq!(second, ideal(vars, "Y*X1, Y*X2, X1*X2"));

        // intersecting with the unit ideal is the identity
        let unit = ideal(vars, "1");
        assert_eq!(second.intersect(&unit).unwrap(), second);
    }

    #[test]
    fn intersection_against_membership_oracle() {
        // brute-force check over all monomials of degree <= 4 in 4 variables
        let vars = "A, B, C, D";
        let i = ideal(vars, "A*B, C^2");
        let j = ideal(vars, "A*C, B");
        let meet = i.intersect(&j).unwrap();
        let mut mono = vec![0u16; 4];
        fn walk(
            mono: &mut Vec<u16>,
            idx: usize,
            budget: u16,
            i: &MonomialIdeal,
            j: &MonomialIdeal,
            meet: &MonomialIdeal,
        ) {
            if idx == mono.len() {
                let both = i.contains_monomial(mono) && j.contains_monomial(mono);
                assert_eq!(meet.contains_monomial(mono), both, "monomial {mono:?}");
                return;
            }
            for e in 0..=budget {
                mono[idx] = e;
                walk(mono, idx + 1, budget - e, i, j, meet);
            }
            mono[idx] = 0;
        }
        walk(&mut mono, 0, 4, &i, &j, &meet);
    }

    #[test]
    fn complete_intersection_examples() {
        let hypersurface = ideal("X1, X2, X3, X4", "X2*X4");
        let cert = hypersurface.is_complete_intersection().unwrap();
        assert!(cert.complete_intersection);
        assert_eq!((cert.mu, cert.height), (1, 1));

        let triple = ideal("X1, X2, Y, Z, W", "X1*X2, X1*Y, X2*Y");
        let cert = triple.is_complete_intersection().unwrap();
        assert!(!cert.complete_intersection);
        assert_eq!((cert.mu, cert.height), (3, 2));

        let zero = ideal("X, Y, Z", "0");
        let cert = zero.is_complete_intersection().unwrap();
        assert!(cert.complete_intersection);
        assert_eq!((cert.mu, cert.height), (0, 0));

        assert_eq!(
            ideal("X, Y", "X, Y^2").is_complete_intersection(),
            Err(IdealError::DegreeOneGenerator)
        );
    }

    #[test]
    fn tangent_dimension_examples() {
        assert_eq!(ideal("X1, X2, Y, Z, W", "X1*X2, X1*Y, X2*Y").tangent_dimension(), 5);
        assert_eq!(ideal("X, Y, Z", "X").tangent_dimension(), 2);
        assert_eq!(ideal("A, B, C, D, E, F", "A*B").tangent_dimension(), 6);
    }

    #[test]
    fn radical_law_for_squarefree_ideals() {
        // for squarefree I, intersecting the minimal primes recovers I
        for (vars, gens) in [
            ("X1, X2, Y, Z, W", "X1*X2, X1*Y, X2*Y"),
            ("X1, X2, X3, X4", "X2*X4"),
            ("A, B, C", "A*B, B*C"),
            ("A, B, C, D", "A*B*C, A*D"),
        ] {
            let i = ideal(vars, gens);
            let primes = i.minimal_primes();
            let mut meet = parse_ideal(vars, "1").unwrap();
            for prime in primes {
                let mut raw = Vec::new();
                for v in prime {
                    let mut expo = vec![0u16; i.num_variables()];
                    expo[v] = 1;
                    raw.push(expo);
                }
                let prime_ideal = MonomialIdeal::new(i.variables().to_vec(), raw).unwrap();
                meet = meet.intersect(&prime_ideal).unwrap();
            }
            assert_eq!(meet, i, "{gens}");
        }
    }

    #[test]
    fn minimal_primes_form_antichain() {
        let i = ideal("A, B, C, D", "A*B, B*C, C*D, A*D");
        let primes = i.minimal_primes();
        for (x, p) in primes.iter().enumerate() {
            for (y, q) in primes.iter().enumerate() {
                if x != y {
                    assert!(!p.iter().all(|v| q.contains(v)), "{p:?} inside {q:?}");
                }
            }
        }
    }

    #[test]
    fn parser_reports_errors() {
        assert!(parse_ideal("X, Y", "X*Z").is_err());
        assert!(parse_ideal("", "X").is_err());
        assert!(parse_ideal("X, X", "X").is_err());
        assert!(parse_ideal("X, Y", "X^a").is_err());
    }
}
