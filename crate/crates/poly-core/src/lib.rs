//! Exact arithmetic for graph polynomials.
//!
//! Coefficients are [`Rational`] (arbitrary precision, always reduced).
//! [`MultiPoly`] is a sparse polynomial whose variables are named by an
//! ordered registry of edge identifiers; [`RingMatrix`] holds polynomial
//! entries and computes determinants without ever dividing rational
//! functions.

mod matrix;
mod poly;
mod rational;

pub use matrix::RingMatrix;
pub use poly::{Monomial, MultiPoly, Vars};
pub use rational::{parse_rational, rational_to_f64, Rational};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable registries differ")]
    RegistryMismatch,
    #[error("matrix is not square: {0} x {1}")]
    NotSquare(usize, usize),
    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),
    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("cannot parse `{0}` as a rational number")]
    BadRational(String),
    #[error("cannot parse polynomial: {0}")]
    BadPolynomial(String),
}
