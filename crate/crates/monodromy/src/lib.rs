//! Vanishing cycles, the Picard–Lefschetz action and the nilpotent
//! logarithms N_e of a degenerating family with two divisors of sections.
//!
//! Conventions: ⟨a_i, b_j⟩ = δ_ij on H₁ with basis (a₁..a_g, b₁..b_g), so the
//! pairing matrix is J = [[0, I], [−I, 0]]. Edge lifts are paired with the
//! cycle basis as W_e(ω) = c_e·ω_e, and a lift is read off crossing data by
//! ω_e = −Σ_l p_l d_{e,l}.

mod blocks;
pub mod fixtures;
mod json;
mod picard;

pub use blocks::{
    build_ne, crossing_lift, lift_identities_check, tilde_matrices, NilpotentBlock, LiftIdentityReport, SectionCrossings,
    TildeBlocks, VanishingCycles,
};
pub use json::parse_crossings;
pub use picard::{pairing, picard_lefschetz, standard_symplectic};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonodromyError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("cycle vector for edge `{edge}` has {got} entries, more than the genus {genus}")]
    TooManyCycles { edge: String, got: usize, genus: usize },
    #[error("edge index {0} out of range")]
    EdgeIndex(usize),
    #[error("N_e does not square to zero for edge `{0}`")]
    NotNilpotent(String),
    #[error(transparent)]
    Graph(#[from] graph_core::GraphError),
}
