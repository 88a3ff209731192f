//! Height evaluation along nilpotent orbits, the tropical term and the
//! α′ → 0 limits along admissible segments.

mod fixture;
mod height;
mod scan;
mod segment;
pub mod sample;

pub use fixture::{EdgeParameters, FixtureTerm, HolomorphicFixture};
pub use height::{height_eval, height_via_orbit, tropical_height, Channel, EdgeBlock, HeightData};
pub use scan::{bounded_remainder_scan, geometric_grid, RayProfile, ScanReport};
pub use segment::{limit_along_segment, AdmissibleSegment, EdgePath, LimitReport, Oscillation, DEFAULT_SCHEDULE};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticsError {
    #[error("expected {expected} entries, got {got}")]
    Lengths { expected: usize, got: usize },
    #[error("edge `{edge}`: y = {y} does not exceed the offset h0 = {h0}")]
    BelowOffset { edge: String, y: f64, h0: f64 },
    #[error("Im(Omega0) + sum y'_e M_e is not positive definite at y = {y:?}")]
    NotPositive { y: Vec<f64> },
    #[error("parameter s = {norm} lies outside the fixture radius {radius}")]
    OutsideRadius { norm: f64, radius: f64 },
    #[error("segment is not admissible on edge `{edge}`: lim |t|^a' = {limit} is not in (0,1)")]
    NotAdmissible { edge: String, limit: f64 },
    #[error("fixture genus {fixture} does not match block genus {blocks}")]
    Genus { fixture: usize, blocks: usize },
    #[error(transparent)]
    Symanzik(#[from] symanzik::SymanzikError),
    #[error(transparent)]
    Monodromy(#[from] monodromy::MonodromyError),
    #[error(transparent)]
    Poincare(#[from] poincare::PoincareError),
}
