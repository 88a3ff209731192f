//! First and second Symanzik polynomials of a graph.
//!
//! The first polynomial ψ is produced by two routes (a determinant over the
//! cycle space and a spanning-tree sum), the second polynomial φ by two more
//! (a bordered determinant built from a momentum lift and a spanning
//! 2-forest sum). Numeric ratios φ/ψ come from a Schur complement on the
//! cycle space, checked against the pseudo-inverse of the weighted
//! Laplacian.

mod momenta;
mod numeric;
mod polys;
pub mod sample;

pub use momenta::{momentum_lift, MinkowskiSpace, MomentumAssignment, MomentumLift};
pub use numeric::{
    resistance_bilinear, resistance_oracle, symanzik_ratio_bilinear, symanzik_ratio_eval,
    symanzik_ratio_with_basis,
};
pub use polys::{
    edge_quadratics, first_symanzik, first_symanzik_det, first_symanzik_trees, second_symanzik,
    second_symanzik_bordered, second_symanzik_forests, EdgeQuadratic,
};

use graph_core::GraphError;
use poly_core::PolyError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymanzikError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("conservation law violated: momenta sum to a nonzero vector (component {0})")]
    Conservation(usize),
    #[error("momentum has {got} components but the Minkowski space has dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("expected {expected} vertex momenta, got {got}")]
    VertexCount { expected: usize, got: usize },
    #[error("bilinear form is not symmetric")]
    Asymmetric,
    #[error("bilinear form is degenerate")]
    Degenerate,
    #[error("edge length for `{0}` must be positive and finite")]
    NonPositive(String),
    #[error("expected {expected} edge lengths, got {got}")]
    Lengths { expected: usize, got: usize },
    #[error("cycle-space matrix is not positive definite")]
    Singular,
    #[error("momentum assignments live in different spaces")]
    SpaceMismatch,
}
