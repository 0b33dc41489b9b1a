//! Subgraph–orientation bijections for graphs and regular matroids.

pub mod bijection;
pub mod caps;
pub mod error;
pub mod fm;
pub mod gen;
pub mod geometry;
pub mod graph;
pub mod linalg;
pub mod matroid;
pub mod oracle;
pub mod oriented;
pub mod reversal;
pub mod signature;
pub mod signed;

pub use bijection::{classify_specialization, g, g_inverse, phi, BijectionTable, Specialization, TableCache};
pub use caps::Caps;
pub use error::{Error, Result};
pub use geometry::{
    cell_contains, count_dilated_zonotope_lattice_points, ehrhart_from_independent_sets, ehrhart_from_phi,
    locate_point, sigma_restricted_sum, verify_cube_decomposition, CubeReport, HalfOpenCell, MultilinearPolynomial,
    RationalPoint, ZonotopeCounter,
};
pub use graph::Graph;
pub use matroid::{check_totally_unimodular, graph_to_rep, RegularMatroidRep};
pub use oracle::{
    audit_bijection, audit_table, classify_subset, reversal_closure_classes, table_one_evaluations, tutte, AuditReport,
    SubsetClass, SubsetCounts, TableAudit, TutteEvaluation,
};
pub use oriented::{OrientedMatroid, Painting};
pub use reversal::{
    compatible_decomposition, compatible_representative, enumerate_classes, representative_with_schedule, same_class,
    sigma_representative, sigma_star_representative, ClassDecomposition, ReversalKind,
};
pub use signature::{
    acyclicity_by_elimination, check_pair, default_weights, is_acyclic, Provenance, Signature, SignatureSide,
    WeightVector,
};
pub use signed::{
    reverse, Basis, EdgeSet, Orientation, PartialOrientation, Side, SignedSet, SignedVector, SpanningSubgraph,
};
