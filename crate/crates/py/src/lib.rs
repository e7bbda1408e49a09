//! Python bindings: the main types and operations of pdcheck-core, plus
//! JSON-emitting wrappers around the certification drivers.
//!
//! Build with `cargo build -p pdcheck-py --release`; the smoke test under
//! python/ shows how to import the resulting extension module.

use pdcheck_core::{arith, certify, localalg, qexp};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string_pretty(value).map_err(value_error)
}

/// Deterministic primality for the full u64 range.
#[pyfunction]
fn is_prime(n: u64) -> bool {
    arith::is_prime(n)
}

/// base^exp mod modulus by square-and-multiply.
#[pyfunction]
fn powmod(base: i64, exp: u64, modulus: u64) -> PyResult<u64> {
    if modulus == 0 {
        return Err(PyValueError::new_err("modulus must be positive"));
    }
    Ok(arith::powmod(base, exp, modulus))
}

/// The exact Bernoulli number B_k as a (numerator, denominator) pair of
/// decimal strings, cross-checked by two independent algorithms.
#[pyfunction]
fn bernoulli(k: u64) -> PyResult<(String, String)> {
    let b = arith::bernoulli(k).map_err(value_error)?;
    let cross = arith::bernoulli_akiyama_tanigawa(k).map_err(value_error)?;
    if b != cross {
        return Err(PyValueError::new_err("independent Bernoulli algorithms disagree"));
    }
    Ok((b.numerator().to_string(), b.denominator().to_string()))
}

/// B_k mod p, or None when p divides the denominator.
#[pyfunction]
fn bernoulli_mod(k: u64, p: u64) -> PyResult<Option<u64>> {
    match arith::bernoulli_mod_p(k, p).map_err(value_error)? {
        arith::BernoulliModP::Residue(r) => Ok(Some(r)),
        arith::BernoulliModP::PInDenominator => Ok(None),
    }
}

/// The Bernoulli unobstructedness criterion for (p, a) at level 1.
#[pyfunction]
fn unobstructed(p: u64, a: i64) -> PyResult<bool> {
    Ok(arith::check_unobstructed_bernoulli(p, a)
        .map_err(value_error)?
        .unobstructed)
}

/// True iff l/l~ is a topological generator of 1 + pZ_p.
#[pyfunction]
fn one_plus_p_generator(ell: u64, p: u64) -> PyResult<bool> {
    arith::is_one_plus_p_generator(ell, p).map_err(value_error)
}

/// The Sturm bound for (weight, squarefree level).
#[pyfunction]
fn sturm_bound(weight: u64, level: u64) -> PyResult<u64> {
    qexp::sturm_bound(weight, level).map_err(value_error)
}

/// Hypothesis hunt; returns the report set as a JSON string.
#[pyfunction]
#[pyo3(signature = (p, a, bound, nonsplit = false))]
fn hunt(p: u64, a: i64, bound: u64, nonsplit: bool) -> PyResult<String> {
    let mode = if nonsplit {
        certify::HuntMode::NonSplit
    } else {
        certify::HuntMode::Split
    };
    let result = certify::hunt(p, a, bound, mode).map_err(value_error)?;
    to_json(&result)
}

/// The theta-series eigensystem certification for (p, l); JSON report.
#[pyfunction]
#[pyo3(signature = (p, ell, precision = None))]
fn verify_eigensystem(p: u64, ell: u64, precision: Option<u64>) -> PyResult<String> {
    let report = certify::eigenform_lift_report(p, ell, precision).map_err(value_error)?;
    to_json(&report)
}

/// Analyze monomial-ideal presentations (same grammar as the CLI file
/// format); JSON report list.
#[pyfunction]
fn ring_analyze(source: &str) -> PyResult<String> {
    let reports = certify::ring_analyze_source(source).map_err(value_error)?;
    to_json(&reports)
}

/// The h-polynomial with its congruence certificate; JSON.
#[pyfunction]
#[pyo3(signature = (ell, degree = 8, modulus = None))]
fn h_poly(ell: u64, degree: usize, modulus: Option<u64>) -> PyResult<String> {
    to_json(&certify::h_poly_output(ell, degree, modulus).map_err(value_error)?)
}

/// The pseudo-character property suite on a catalog ring/group pair; JSON.
#[pyfunction]
#[pyo3(signature = (ring, group, budget = 100_000_000, samples = 200))]
fn pseudo_check(ring: &str, group: &str, budget: u64, samples: u64) -> PyResult<String> {
    to_json(&certify::pseudo_check_report(ring, group, budget, samples).map_err(value_error)?)
}

/// A truncated q-expansion with weight, level, reliable precision, and an
/// optional coefficient modulus.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct QSeries {
    inner: qexp::QExpansion,
}

#[pymethods]
impl QSeries {
    /// The Eisenstein series of even weight k >= 4, over exact rationals.
    #[staticmethod]
    fn eisenstein(k: u64, precision: usize) -> PyResult<Self> {
        Ok(QSeries {
            inner: qexp::eisenstein(k, precision).map_err(value_error)?,
        })
    }

    /// The discriminant cusp form, over exact integers.
    #[staticmethod]
    fn delta(precision: usize) -> PyResult<Self> {
        Ok(QSeries {
            inner: qexp::delta(precision).map_err(value_error)?,
        })
    }

    /// The mod-p difference series of weight p-1 and level l.
    #[staticmethod]
    fn difference_series(p: u64, ell: u64, precision: usize) -> PyResult<Self> {
        Ok(QSeries {
            inner: qexp::f_ell(p, ell, precision).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn import_text(text: &str) -> PyResult<Self> {
        Ok(QSeries {
            inner: qexp::import_text(text).map_err(value_error)?,
        })
    }

    fn reduce_mod(&self, p: u64) -> PyResult<Self> {
        Ok(QSeries {
            inner: self.inner.reduce_mod(p).map_err(value_error)?,
        })
    }

    fn hecke_t(&self, q: u64) -> PyResult<Self> {
        Ok(QSeries {
            inner: qexp::hecke_t(q, &self.inner).map_err(value_error)?,
        })
    }

    fn hecke_u(&self, ell: u64) -> PyResult<Self> {
        Ok(QSeries {
            inner: qexp::hecke_u(ell, &self.inner).map_err(value_error)?,
        })
    }

    fn theta(&self) -> PyResult<Self> {
        Ok(QSeries {
            inner: qexp::theta(&self.inner).map_err(value_error)?,
        })
    }

    /// Coefficient a_n as an exact decimal/rational string.
    fn coefficient(&self, n: usize) -> PyResult<String> {
        self.inner
            .coeff(n)
            .map(|c| c.to_string())
            .ok_or_else(|| PyValueError::new_err(format!("index {n} beyond the reliable precision")))
    }

    /// Coefficient a_n as a residue, when the series has a modulus.
    fn residue(&self, n: usize) -> Option<u64> {
        self.inner.residue(n)
    }

    fn weight(&self) -> u64 {
        self.inner.weight()
    }

    fn level(&self) -> u64 {
        self.inner.level()
    }

    fn precision(&self) -> usize {
        self.inner.precision()
    }

    fn modulus(&self) -> Option<u64> {
        self.inner.modulus()
    }

    fn export_text(&self) -> String {
        qexp::export_text(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "QSeries(weight={}, level={}, precision={}, modulus={:?})",
            self.inner.weight(),
            self.inner.level(),
            self.inner.precision(),
            self.inner.modulus()
        )
    }
}

/// A monomial ideal in named variables, with the structural invariants of
/// the local ring it presents.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Ideal {
    inner: localalg::MonomialIdeal,
}

#[pymethods]
impl Ideal {
    /// Parse from the `X1*X2, X1*Y` generator syntax.
    #[new]
    fn new(variables: &str, generators: &str) -> PyResult<Self> {
        Ok(Ideal {
            inner: localalg::parse_ideal(variables, generators).map_err(value_error)?,
        })
    }

    fn minimal_generator_count(&self) -> usize {
        self.inner.minimal_generator_count()
    }

    fn krull_dimension(&self) -> PyResult<usize> {
        self.inner.krull_dimension().map_err(value_error)
    }

    fn height(&self) -> PyResult<usize> {
        self.inner.height().map_err(value_error)
    }

    fn minimal_primes(&self) -> Vec<Vec<String>> {
        self.inner
            .minimal_primes()
            .into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|i| self.inner.variables()[i].clone())
                    .collect()
            })
            .collect()
    }

    fn is_reduced(&self) -> bool {
        self.inner.is_reduced()
    }

    /// (is_ci, mu, height); raises when a degree-one generator is present.
    fn is_complete_intersection(&self) -> PyResult<(bool, usize, usize)> {
        let cert = self.inner.is_complete_intersection().map_err(value_error)?;
        Ok((cert.complete_intersection, cert.mu, cert.height))
    }

    fn tangent_dimension(&self) -> usize {
        self.inner.tangent_dimension()
    }

    fn intersect(&self, other: &Ideal) -> PyResult<Self> {
        Ok(Ideal {
            inner: self.inner.intersect(&other.inner).map_err(value_error)?,
        })
    }

    fn contains_ideal(&self, other: &Ideal) -> PyResult<bool> {
        self.inner.contains_ideal(&other.inner).map_err(value_error)
    }

    fn render(&self) -> String {
        self.inner.render()
    }

    fn __repr__(&self) -> String {
        format!("Ideal({})", self.inner.render())
    }
}

#[pymodule]
fn pdcheck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(powmod, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli_mod, m)?)?;
    m.add_function(wrap_pyfunction!(unobstructed, m)?)?;
    m.add_function(wrap_pyfunction!(one_plus_p_generator, m)?)?;
    m.add_function(wrap_pyfunction!(sturm_bound, m)?)?;
    m.add_function(wrap_pyfunction!(hunt, m)?)?;
    m.add_function(wrap_pyfunction!(verify_eigensystem, m)?)?;
    m.add_function(wrap_pyfunction!(ring_analyze, m)?)?;
    m.add_function(wrap_pyfunction!(h_poly, m)?)?;
    m.add_function(wrap_pyfunction!(pseudo_check, m)?)?;
    m.add_class::<QSeries>()?;
    m.add_class::<Ideal>()?;
    Ok(())
}
