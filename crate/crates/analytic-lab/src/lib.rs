//! Green functions on the Riemann sphere and on flat tori, heights of
//! divisors through them, and degenerating torus families compared with the
//! metric-graph pairing on the limiting cycle.

mod degeneration;
mod graph;
mod pairing;
mod quad;
mod sphere;
mod theta;
mod torus;

pub use degeneration::{DegenerationFamily, DegenerationReport, MarkedCharge, DEFAULT_SCHEDULE};
pub use graph::{metric_graph_green, subdivided_cycle};
pub use num_complex::Complex64;
pub use pairing::{height_pairing_surface, on_shell, regularized_self_height, Charge, GreenFunction};
pub use sphere::{cross_ratio, green_sphere, residue_integral, SphereGreen, SpherePoint};
pub use theta::TorusModulus;
pub use torus::{lattice_distance, TorusGreen, TorusPoint};

use graph_core::GraphError;
use symanzik::SymanzikError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("τ must lie in the upper half plane (Im τ = {0})")]
    UpperHalfPlane(f64),
    #[error("theta series not converged after {terms} terms")]
    Truncation { terms: usize },
    #[error("coincident points: use the regularized self-height")]
    Coincident,
    #[error("divisor supports overlap: use the regularized self-height")]
    Overlap,
    #[error("momenta are not conserved (defect {0:e})")]
    NotConserved(f64),
    #[error("momentum has {got} components, form has {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("marked points must be distinct in disjoint mode")]
    NotDistinct,
    #[error("fractional positions must lie in [0, 1) and be finite")]
    Positions,
    #[error("α′ schedule must be positive and strictly decreasing")]
    Schedule,
    #[error("total length must be positive, got {0}")]
    NotPositive(f64),
    #[error(transparent)]
    Symanzik(#[from] SymanzikError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
