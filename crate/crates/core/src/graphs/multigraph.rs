use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Base-edge label carried through covers.
    pub label: Option<usize>,
}

/// Finite multigraph on vertices `0..n`. Loops and parallel edges are allowed.
/// Edge ids are positions in `edges`; each edge has the canonical orientation `u -> v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::Structural(format!(
                    "edge {i} has endpoint outside 0..{n}"
                )));
            }
        }
        Ok(Self { n, edges })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(u, v)| Edge { u, v, label: None })
            .collect();
        Self::new(n, edges)
    }

    pub fn cycle(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_pairs(n, &pairs).expect("cycle endpoints are in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// Degree with loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    /// Incidence lists: for each vertex, `(edge id, other endpoint)` per edge-end.
    /// A loop appears twice at its vertex.
    pub fn incidences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.u].push((i, e.v));
            inc[e.v].push((i, e.u));
        }
        inc
    }

    /// Dense multi-adjacency matrix (a loop contributes 2 on the diagonal).
    pub fn adjacency(&self) -> Vec<Vec<f64>> {
        let mut a = vec![vec![0.0; self.n]; self.n];
        for e in &self.edges {
            a[e.u][e.v] += 1.0;
            if e.u != e.v {
                a[e.v][e.u] += 1.0;
            } else {
                a[e.u][e.u] += 1.0;
            }
        }
        a
    }

    pub fn components(&self) -> Vec<usize> {
        let inc = self.incidences();
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(_, y) in &inc[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Two-coloring if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let inc = self.incidences();
        let mut side = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let sx = side[x].unwrap();
                for &(_, y) in &inc[x] {
                    match side[y] {
                        None => {
                            side[y] = Some(!sx);
                            queue.push_back(y);
                        }
                        Some(sy) if sy == sx => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    /// Subgraph induced on a vertex subset (in the given order), keeping edge labels.
    /// Returns the subgraph and the original ids of its edges.
    pub fn induced(&self, vertices: &[usize]) -> (Multigraph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        let mut ids = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if index[e.u] != usize::MAX && index[e.v] != usize::MAX {
                edges.push(Edge {
                    u: index[e.u],
                    v: index[e.v],
                    label: e.label,
                });
                ids.push(i);
            }
        }
        (
            Multigraph {
                n: vertices.len(),
                edges,
            },
            ids,
        )
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: (0..self.n).collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(id, e)| EdgeJson {
                    id,
                    u: e.u,
                    v: e.v,
                    label: e.label,
                })
                .collect(),
        }
    }

    /// Loads graph JSON; vertex and edge ids are remapped to positions.
    /// Returns the graph and the original edge ids in position order.
    pub fn from_json(j: &GraphJson) -> Result<(Self, Vec<usize>)> {
        let mut vindex = BTreeMap::new();
        for (i, &v) in j.vertices.iter().enumerate() {
            if vindex.insert(v, i).is_some() {
                return Err(Error::Structural(format!("duplicate vertex id {v}")));
            }
        }
        let mut seen = BTreeMap::new();
        let mut edges = Vec::with_capacity(j.edges.len());
        for e in &j.edges {
            if seen.insert(e.id, ()).is_some() {
                return Err(Error::Structural(format!("duplicate edge id {}", e.id)));
            }
            let look = |x: usize| {
                vindex.get(&x).copied().ok_or_else(|| {
                    Error::Structural(format!("edge {} references missing vertex {x}", e.id))
                })
            };
            edges.push(Edge {
                u: look(e.u)?,
                v: look(e.v)?,
                label: e.label,
            });
        }
        let ids = j.edges.iter().map(|e| e.id).collect();
        Ok((Self::new(j.vertices.len(), edges)?, ids))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<usize>,
}

/// Θ_k: two vertices joined by `k` parallel edges `e_1..e_k` (labels `0..k`).
pub fn theta_graph(k: usize) -> Result<Multigraph> {
    if k < 2 {
        return Err(Error::Parameter(format!("theta graph needs k >= 2, got {k}")));
    }
    let edges = (0..k)
        .map(|j| Edge {
            u: 0,
            v: 1,
            label: Some(j),
        })
        .collect();
    Multigraph::new(2, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_counts() {
        let t = theta_graph(3).unwrap();
        assert_eq!(t.vertex_count(), 2);
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.degrees(), vec![3, 3]);
        assert_eq!(theta_graph(18).unwrap().edge_count(), 18);
        assert!(theta_graph(1).is_err());
    }

    #[test]
    fn loops_count_twice() {
        let g = Multigraph::from_pairs(1, &[(0, 0)]).unwrap();
        assert_eq!(g.degrees(), vec![2]);
        assert_eq!(g.adjacency()[0][0], 2.0);
    }

    #[test]
    fn json_round_trip_remaps_ids() {
        let j = GraphJson {
            vertices: vec![10, 20],
            edges: vec![EdgeJson {
                id: 7,
                u: 20,
                v: 10,
                label: Some(3),
            }],
        };
        let (g, ids) = Multigraph::from_json(&j).unwrap();
        assert_eq!(ids, vec![7]);
        assert_eq!(g.edge(0), Edge { u: 1, v: 0, label: Some(3) });
        let back = Multigraph::from_json(&g.to_json()).unwrap().0;
        assert_eq!(back, g);
    }

    #[test]
    fn bad_endpoint_rejected() {
        assert!(Multigraph::from_pairs(2, &[(0, 2)]).is_err());
        let j = GraphJson {
            vertices: vec![0, 0],
            edges: vec![],
        };
        assert!(Multigraph::from_json(&j).is_err());
    }
}
