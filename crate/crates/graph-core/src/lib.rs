//! Oriented multigraphs and their homology.
//!
//! Loops and parallel edges are allowed everywhere. Edges are stored in
//! lexicographic order of their identifiers, which is also the variable
//! order of every polynomial built on top of a graph. Vertices keep the
//! order in which they were given; the first one is the root of the
//! designated spanning tree.

mod basis;
pub mod corpus;
mod enumerate;
mod graph;
pub mod json;

pub use basis::{CycleBasis, CycleVector};
pub use enumerate::{SpanningTrees, TwoForest};
pub use graph::{Edge, Multigraph, Vertex};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("vector of length {got} does not match {expected} edges")]
    WrongLength { expected: usize, got: usize },
    #[error("vector is not a cycle: boundary is nonzero at vertex `{0}`")]
    NotACycle(String),
    #[error("expected {expected} basis cycles, got {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("cycles do not form an integral basis (index {0})")]
    NotIntegral(String),
}
