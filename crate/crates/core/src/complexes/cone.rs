use super::complex::{Complex2, ComplexLabels, EdgeKind, Side};
use crate::error::{Error, Result};

/// Cones off every labeled boundary graph: one new vertex per boundary, an edge from each
/// boundary vertex to it, and a triangle over each boundary edge.
pub fn cone_off(c: &Complex2) -> Result<Complex2> {
    let boundaries = &c.labels.boundaries;
    let mut owner = vec![usize::MAX; c.vertex_count()];
    for (i, b) in boundaries.iter().enumerate() {
        for &v in &b.vertices {
            if owner[v] != usize::MAX {
                return Err(Error::Structural(format!(
                    "boundaries {} and {} share vertex {v}",
                    boundaries[owner[v]].name, b.name
                )));
            }
            owner[v] = i;
        }
    }
    let mut edges = c.edges().to_vec();
    let mut faces = c.faces().to_vec();
    let mut cones = Vec::with_capacity(boundaries.len());
    let mut vertex_count = c.vertex_count();
    let mut cone_edge = vec![usize::MAX; c.vertex_count()];
    for (i, b) in boundaries.iter().enumerate() {
        let w = vertex_count;
        vertex_count += 1;
        cones.push((w, i));
        for &v in &b.vertices {
            cone_edge[v] = edges.len();
            edges.push((v, w));
        }
        for &e in &b.edges {
            let (u, v) = edges[e];
            if owner[u] != i || owner[v] != i {
                return Err(Error::Structural(format!(
                    "edge {e} of boundary {} leaves its vertex set",
                    b.name
                )));
            }
            faces.push(vec![Side::fwd(e), Side::fwd(cone_edge[v]), Side::bwd(cone_edge[u])]);
        }
    }
    let edge_kinds = c.labels.edge_kinds.clone().map(|mut k| {
        k.resize(edges.len(), EdgeKind::Cone);
        k
    });
    let labels = ComplexLabels {
        boundaries: boundaries.clone(),
        cones,
        edge_kinds,
        vertex_kinds: None,
    };
    Complex2::new(vertex_count, edges, faces)?.with_labels(labels)
}
