//! Dimension-2 cyclic codes `C(a,b,q)` built from the second-order linear
//! recurrence `g(n+2) = a*g(n+1) + b*g(n)` over a finite field `F_q`.
//!
//! The crate computes the period `N`, the rank `e` (spacing of zeros), the
//! weight distribution in closed form, and the MDS / projectivity /
//! classification flags of each code. Every closed-form answer has a
//! brute-force counterpart so the two can be checked against each other.
//!
//! Module map:
//! - [`gf`]: Zech-logarithm arithmetic in `F_{p^k}` and its quadratic extension.
//! - [`recurrence`]: factorization of `x^2 - a x - b`, period, rank, closed forms.
//! - [`codes`]: the code itself, weight distributions, distances, check polynomials.
//! - [`catalog`]: field-wide scans, table fixtures, JSONL/CSV export.
//! - [`selftest`]: the exhaustive invariant suites behind `recur2code selftest`.
//! - [`cli`]: the `recur2code` command-line interface.

pub mod catalog;
pub mod cli;
pub mod codes;
mod error;
pub mod gf;
pub mod recurrence;
pub mod selftest;

pub use error::{Error, Result};
