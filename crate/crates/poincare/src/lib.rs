//! Siegel space, the extended group G̃ acting on (Ω, W, Z, ρ), and the
//! canonical log-metric of the Poincaré bundle.

mod group;
pub mod sample;
mod siegel;

pub use group::{is_symplectic, symplectic_form, GroupElement};
pub use siegel::{log_norm, BiextensionPoint, SiegelPoint};

pub use num_complex::Complex64;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PoincareError {
    #[error("period matrix is not symmetric (defect {0:e})")]
    Asymmetric(f64),
    #[error("imaginary part of the period matrix is not positive definite")]
    NotPositive,
    #[error("expected size {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("block is not symplectic (defect {0:e})")]
    NotSymplectic(f64),
    #[error("matrix does not have the block shape of the extended group")]
    NotInGroup,
    #[error("C·Omega + D is singular")]
    Singular,
}
