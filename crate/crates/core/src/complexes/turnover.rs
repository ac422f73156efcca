use super::complex::{BoundaryGraph, Complex2, ComplexLabels, Side};
use crate::error::{Error, Result};
use crate::graphs::{Edge, Multigraph};

/// k triangles glued along one common boundary triangle.
pub fn turnover(k: usize) -> Result<Complex2> {
    if k < 1 {
        return Err(Error::Parameter("turnover needs k >= 1".into()));
    }
    let face = vec![Side::fwd(0), Side::fwd(1), Side::fwd(2)];
    Complex2::new(3, vec![(0, 1), (1, 2), (2, 0)], vec![face; k])
}

/// Vertex ids of T_0. Vertex `P[a][b]` sits on the side of the triangle near corner `a`,
/// towards corner `b`.
pub const P01: usize = 0;
pub const P10: usize = 1;
pub const P12: usize = 2;
pub const P21: usize = 3;
pub const P20: usize = 4;
pub const P02: usize = 5;

/// Long edges (truncated triangle sides) shared by all hexagons.
pub const LONG: [usize; 3] = [0, 1, 2];

/// Corner whose boundary Θ is the `i`-th labeled boundary of T_0.
pub const BOUNDARY_CORNERS: [usize; 3] = [1, 2, 0];

/// Id of the short edge cut off corner `c` in sheet `j`.
pub fn short_edge(c: usize, j: usize) -> usize {
    // per sheet: corner 1, corner 2, corner 0
    3 + 3 * j + [2, 0, 1][c]
}

/// T_0: the k-fold turnover with its three tips cut off. Hexagon `j` reads
/// `L01, S1j, L12, S2j, L20, S0j`; the three boundaries are the Θ_k graphs at
/// corners 1, 2, 0 with edge `S_cj` playing `e_j`.
pub fn truncated_turnover(k: usize) -> Result<Complex2> {
    if k < 2 {
        return Err(Error::Parameter("truncated turnover needs k >= 2".into()));
    }
    let mut edges = vec![(P01, P10), (P12, P21), (P20, P02)];
    for _ in 0..k {
        edges.push((P10, P12));
        edges.push((P21, P20));
        edges.push((P02, P01));
    }
    let faces = (0..k)
        .map(|j| {
            vec![
                Side::fwd(LONG[0]),
                Side::fwd(short_edge(1, j)),
                Side::fwd(LONG[1]),
                Side::fwd(short_edge(2, j)),
                Side::fwd(LONG[2]),
                Side::fwd(short_edge(0, j)),
            ]
        })
        .collect();
    let boundaries = BOUNDARY_CORNERS
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let (u, v) = edges[short_edge(c, 0)];
            BoundaryGraph {
                name: format!("theta{}", i + 1),
                vertices: vec![u, v],
                edges: (0..k).map(|j| short_edge(c, j)).collect(),
            }
        })
        .collect();
    Complex2::new(6, edges, faces)?.with_labels(ComplexLabels {
        boundaries,
        ..Default::default()
    })
}

/// The spine K_{3,k} onto which T_0 retracts: vertices `0..3` are the long edges,
/// `3..3+k` the hexagons.
pub fn t0_spine(k: usize) -> Result<Multigraph> {
    if k < 2 {
        return Err(Error::Parameter("spine needs k >= 2".into()));
    }
    let edges = (0..3)
        .flat_map(|c| {
            (0..k).map(move |j| Edge {
                u: c,
                v: 3 + j,
                label: None,
            })
        })
        .collect();
    Multigraph::new(3 + k, edges)
}
