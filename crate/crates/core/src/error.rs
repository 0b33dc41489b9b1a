use thiserror::Error;

use crate::signed::{EdgeSet, Orientation};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The graph has a single vertex, so every edge is a loop and there is
    /// no incidence matrix to build. Callers take the all-loops path.
    #[error("graph has a single vertex; use the all-loops special case")]
    TrivialGraph,
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("matrix does not have full row rank (rank {rank}, rows {rows})")]
    NotFullRank { rank: usize, rows: usize },
    #[error("matrix is not totally unimodular")]
    NotTotallyUnimodular,
    #[error("{what} is {actual}, above the configured cap of {limit}")]
    CapExceeded { what: &'static str, limit: usize, actual: usize },
    #[error("vector is not in the {0} space")]
    NotInSubspace(&'static str),
    #[error("vector is not contained in the orientation")]
    NotInOrientation,
    #[error("element {0} must not belong to the basis")]
    ElementInBasis(usize),
    #[error("element {0} must belong to the basis")]
    ElementNotInBasis(usize),
    #[error("{0} is not a basis")]
    NotABasis(EdgeSet),
    #[error("orientations are not in the same reversal class")]
    NotSameClass,
    #[error("weights are not generic: tie-broken signature is not acyclic; try the lexicographically augmented weight {suggestion}")]
    NonGenericWeights { suggestion: String },
    #[error("signature not acyclic")]
    NotAcyclic,
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("orientation {0} is not compatible with the signatures")]
    NotCompatible(Orientation),
    #[error("table has no entry for subgraph {0}")]
    TableIncomplete(EdgeSet),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("point {0} is covered by {1} cells")]
    DecompositionViolated(String, usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
