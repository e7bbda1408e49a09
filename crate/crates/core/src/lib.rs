//! Exact-arithmetic certification toolkit for desk-scale number theory.
//!
//! Everything here is exact: arbitrary-precision integers and rationals,
//! residues mod p, truncated power series, and finite rings. There is no
//! floating point anywhere in the crate.
//!
//! The crate is organized around the objects it certifies:
//!
//! - [`arith`] — primality, modular exponentiation, the `1 + pZ_p`
//!   generator test, and Bernoulli numbers with von Staudt–Clausen
//!   denominator structure.
//! - [`qexp`] — truncated q-expansions over exact rationals and over F_p,
//!   Eisenstein series, the discriminant cusp form, Hecke operators, the
//!   theta operator, and eigensystem verification up to the Sturm bound.
//! - [`powseries`] — truncated multivariate power series, the quadratic
//!   extension by s with s² = 1 + UV, and the h-polynomial recurrence
//!   governing tame inertia matrices.
//! - [`localalg`] — monomial-ideal presentations of complete local rings:
//!   minimal primes, Krull dimension, reducedness, and complete-intersection
//!   certificates.
//! - [`cohomdim`] — dimension bookkeeping for Galois cohomology under
//!   explicitly tracked hypotheses.
//! - [`pseudorep`] — a brute-force laboratory for 2-dimensional
//!   pseudo-characters over small finite local rings.
//! - [`report`] and [`certify`] — hypothesis reports and the end-to-end
//!   certification drivers behind the CLI.

pub mod arith;
pub mod certify;
pub mod cohomdim;
pub mod localalg;
pub mod powseries;
pub mod pseudorep;
pub mod qexp;
pub mod report;
