//! Polygonal 2-complexes: turnovers, T_0 and its covers, cone-offs, links and the
//! boundary surface.

mod complex;
mod cone;
mod cover;
mod iso;
mod surface;
mod turnover;

pub use complex::{
    all_vertex_links, euler_characteristic, vertex_link, BoundaryGraph, CEdgeJson, Complex2,
    ComplexJson, ComplexLabels, EdgeEnd, EdgeKind, Side, VertexJson, VertexKind,
};
pub use cone::cone_off;
pub use cover::{
    boundary_loop, check_complex_covering, cover_complex, phi_voltages, projected_voltages,
    ComplexCoveringMap, ComplexVoltage,
};
pub use iso::{graphs_isomorphic, is_isomorphism, ISO_CELL_GUARD};
pub use surface::{boundary_surface, covering_surface, surface_dual_graph};
pub use turnover::{short_edge, t0_spine, truncated_turnover, turnover, BOUNDARY_CORNERS};
