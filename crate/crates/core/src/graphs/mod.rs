//! Multigraphs, voltage covers, girth, spectra and the LPS generator tower.

mod girth;
mod group;
mod lps;
mod multigraph;
mod spectrum;
mod voltage;

pub use girth::girth;
pub use group::{
    det_is_square, mat_adj, mat_det, mat_mul, projective_order, projectivize, FiniteGroup,
    GroupJson, Mat2, MatrixGroup, MatrixKind, GROUP_ORDER_GUARD,
};
pub use lps::{
    induced_cover_map, lps_generators, lps_voltages, quaternion_solutions, reduce_voltages,
    tower_projection,
};
pub use multigraph::{theta_graph, Edge, EdgeJson, GraphJson, Multigraph};
pub use spectrum::{adjacency_eigs, normalized_laplacian_eigs, spectral_gap, zuk_gap_check};
pub use voltage::{check_covering, voltage_cover, CoveringMap, VoltageAssignment, VoltageJson};
