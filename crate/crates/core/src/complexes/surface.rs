use super::complex::{Complex2, ComplexLabels, EdgeKind, Side, VertexKind};
use crate::error::{Error, Result};
use crate::graphs::{theta_graph, Edge, Multigraph};

/// Surface tiled by right-angled polygons dual to `lambda`: one polygon per vertex of
/// `lambda`, one interior edge per edge of `lambda`, and two mirror edges per polygon
/// between consecutive interior edges.
///
/// `lambda` must be a Θ_k-cover: edges run from "north" to "south" vertices and every
/// vertex has exactly one edge of each label `0..k`.
pub fn covering_surface(lambda: &Multigraph, k: usize) -> Result<Complex2> {
    if k < 3 {
        return Err(Error::Parameter(format!("surface needs k >= 3, got {k}")));
    }
    let n = lambda.vertex_count();
    let mut north = vec![None; n];
    let mut slot = vec![vec![usize::MAX; k]; n];
    for (i, e) in lambda.edges().iter().enumerate() {
        let j = e
            .label
            .filter(|&j| j < k)
            .ok_or_else(|| Error::Parameter(format!("edge {i} has no label below {k}")))?;
        for (v, is_north) in [(e.u, true), (e.v, false)] {
            if north[v].is_some_and(|s| s != is_north) {
                return Err(Error::Parameter(format!("vertex {v} is both north and south")));
            }
            north[v] = Some(is_north);
            if slot[v][j] != usize::MAX {
                return Err(Error::Parameter(format!("vertex {v} has two edges labeled {j}")));
            }
            slot[v][j] = i;
        }
    }
    if slot.iter().any(|s| s.contains(&usize::MAX)) {
        return Err(Error::Parameter("every vertex needs one edge of each label".into()));
    }
    let m = lambda.edge_count();
    // vertices: a(e) = 2e, b(e) = 2e + 1, then one green vertex per (polygon, hole)
    let a = |e: usize| 2 * e;
    let b = |e: usize| 2 * e + 1;
    let green = |x: usize, h: usize| 2 * m + x * k + h;
    let vertex_count = 2 * m + n * k;
    // interior edge e runs b(e) -> a(e)
    let mut edges: Vec<(usize, usize)> = (0..m).map(|e| (b(e), a(e))).collect();
    let mut kinds = vec![EdgeKind::Interior; m];
    let mut faces = Vec::with_capacity(n);
    for x in 0..n {
        let mut face = Vec::with_capacity(3 * k);
        let is_north = north[x].expect("every vertex has edges");
        for step in 0..k {
            if is_north {
                let h = step;
                let prev = slot[x][(h + k - 1) % k];
                let cur = slot[x][h];
                face.push(Side::fwd(edges.len()));
                edges.push((a(prev), green(x, h)));
                face.push(Side::fwd(edges.len()));
                edges.push((green(x, h), b(cur)));
                face.push(Side::fwd(cur));
            } else {
                let h = k - 1 - step;
                let cur = slot[x][h];
                let prev = slot[x][(h + k - 1) % k];
                face.push(Side::bwd(cur));
                face.push(Side::fwd(edges.len()));
                edges.push((b(cur), green(x, h)));
                face.push(Side::fwd(edges.len()));
                edges.push((green(x, h), a(prev)));
            }
            kinds.extend([EdgeKind::Mirror, EdgeKind::Mirror]);
        }
        faces.push(face);
    }
    let mut vkinds = vec![VertexKind::Straight; 2 * m];
    vkinds.resize(vertex_count, VertexKind::RightCorner);
    Complex2::new(vertex_count, edges, faces)?.with_labels(ComplexLabels {
        edge_kinds: Some(kinds),
        vertex_kinds: Some(vkinds),
        ..Default::default()
    })
}

/// The k-holed sphere cut into two right-angled 3k-gons along k interior edges.
pub fn boundary_surface(k: usize) -> Result<Complex2> {
    if k < 3 {
        return Err(Error::Parameter(format!("boundary surface needs k >= 3, got {k}")));
    }
    covering_surface(&theta_graph(k)?, k)
}

/// One dual vertex per face and one dual edge per interior edge, oriented from the face
/// using the edge forwards to the face using it backwards.
pub fn surface_dual_graph(s: &Complex2) -> Result<Multigraph> {
    let kinds = s
        .labels
        .edge_kinds
        .as_ref()
        .ok_or_else(|| Error::Structural("surface has no interior-edge labels".into()))?;
    let mut fwd = vec![None; s.edge_count()];
    let mut bwd = vec![None; s.edge_count()];
    for (f, sides) in s.faces().iter().enumerate() {
        for side in sides {
            let slot = if side.forward { &mut fwd } else { &mut bwd };
            if slot[side.edge].replace(f).is_some() {
                return Err(Error::Structural(format!(
                    "edge {} is used twice in the same direction",
                    side.edge
                )));
            }
        }
    }
    let mut edges = Vec::new();
    for (e, kind) in kinds.iter().enumerate() {
        if *kind != EdgeKind::Interior {
            continue;
        }
        match (fwd[e], bwd[e]) {
            (Some(u), Some(v)) => edges.push(Edge {
                u,
                v,
                label: None,
            }),
            _ => {
                return Err(Error::Structural(format!(
                    "interior edge {e} does not separate two faces"
                )))
            }
        }
    }
    Multigraph::new(s.face_count(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{euler_characteristic, graphs_isomorphic, vertex_link};

    #[test]
    fn k4_counts() {
        let s = boundary_surface(4).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count(), s.face_count()), (16, 20, 2));
        assert_eq!(euler_characteristic(&s), -2);
        assert!(s.faces().iter().all(|f| f.len() == 12));
        assert!(boundary_surface(2).is_err());
    }

    #[test]
    fn dual_is_theta() {
        for k in 3..8 {
            let d = surface_dual_graph(&boundary_surface(k).unwrap()).unwrap();
            let t = theta_graph(k).unwrap();
            assert!(graphs_isomorphic(&d, &t).unwrap().is_some());
        }
    }

    #[test]
    fn corner_pattern() {
        let s = boundary_surface(5).unwrap();
        let kinds = s.labels.vertex_kinds.clone().unwrap();
        for (v, kind) in kinds.iter().enumerate() {
            let corners = vertex_link(&s, v).unwrap().edge_count();
            match kind {
                VertexKind::Straight => assert_eq!(corners, 2),
                VertexKind::RightCorner => assert_eq!(corners, 1),
            }
        }
    }

    #[test]
    fn single_face_has_edgeless_dual() {
        let c = Complex2::new(3, vec![(0, 1), (1, 2), (2, 0)], vec![vec![Side::fwd(0), Side::fwd(1), Side::fwd(2)]])
            .unwrap()
            .with_labels(ComplexLabels {
                edge_kinds: Some(vec![EdgeKind::Mirror; 3]),
                ..Default::default()
            })
            .unwrap();
        let d = surface_dual_graph(&c).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count()), (1, 0));
        let unlabeled = Complex2::new(1, vec![], vec![]).unwrap();
        assert!(surface_dual_graph(&unlabeled).is_err());
    }
}
