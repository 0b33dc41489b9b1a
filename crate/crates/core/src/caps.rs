use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size limits for the exponential enumerations. Exceeding one is an error,
/// never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Ground-set size for circuit, cocircuit, basis and orientation enumeration.
    pub circuit_elements: usize,
    /// `min(rows, cols)` for the exhaustive minor check.
    pub tu_size: usize,
    /// Number of supports in an exact acyclicity test.
    pub signature_supports: usize,
    /// Rank for the zonotope lattice-point oracle.
    pub zonotope_rank: usize,
    /// Lattice points in the zonotope bounding box.
    pub zonotope_box: usize,
    /// Edges for deletion-contraction.
    pub tutte_edges: usize,
    /// Intermediate constraint count during Fourier–Motzkin elimination.
    pub fm_constraints: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            circuit_elements: 16,
            tu_size: 12,
            signature_supports: 20,
            zonotope_rank: 3,
            zonotope_box: 4_000_000,
            tutte_edges: 16,
            fm_constraints: 200_000,
        }
    }
}

pub(crate) fn ensure_cap(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::CapExceeded { what, limit, actual })
    } else {
        Ok(())
    }
}
