use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graphs::{Edge, Multigraph};

/// An edge traversed forwards (`u -> v`) or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Side {
    pub edge: usize,
    pub forward: bool,
}

impl Side {
    pub fn fwd(edge: usize) -> Self {
        Side {
            edge,
            forward: true,
        }
    }

    pub fn bwd(edge: usize) -> Self {
        Side {
            edge,
            forward: false,
        }
    }

    /// Signed 1-based reference used in JSON.
    pub fn signed(self) -> i64 {
        let r = self.edge as i64 + 1;
        if self.forward {
            r
        } else {
            -r
        }
    }

    pub fn from_signed(r: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::Structural("edge-side reference 0 is invalid".into()));
        }
        Ok(Side {
            edge: r.unsigned_abs() as usize - 1,
            forward: r > 0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Mirror,
    Interior,
    Cone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Straight,
    RightCorner,
}

/// A labeled subgraph, such as a boundary Θ of T_0 or one of its elevations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryGraph {
    pub name: String,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexLabels {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundaries: Vec<BoundaryGraph>,
    /// `(cone vertex, index of the boundary it cones)`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cones: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_kinds: Option<Vec<EdgeKind>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_kinds: Option<Vec<VertexKind>>,
}

/// Polygonal 2-complex: vertices `0..n`, oriented edges, faces as closed cycles of sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex2 {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    faces: Vec<Vec<Side>>,
    pub labels: ComplexLabels,
}

impl Complex2 {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>, faces: Vec<Vec<Side>>) -> Result<Self> {
        let c = Complex2 {
            vertex_count,
            edges,
            faces,
            labels: ComplexLabels::default(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn with_labels(mut self, labels: ComplexLabels) -> Result<Self> {
        self.labels = labels;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let n = self.vertex_count;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::Structural(format!("edge {i} has an endpoint out of range")));
            }
        }
        for (f, sides) in self.faces.iter().enumerate() {
            if sides.is_empty() {
                return Err(Error::Structural(format!("face {f} is empty")));
            }
            if let Some(s) = sides.iter().find(|s| s.edge >= self.edges.len()) {
                return Err(Error::Structural(format!(
                    "face {f} references missing edge {}",
                    s.edge
                )));
            }
            for i in 0..sides.len() {
                let next = sides[(i + 1) % sides.len()];
                if self.end(sides[i]) != self.start(next) {
                    return Err(Error::Structural(format!("face {f} is not a closed edge path")));
                }
            }
        }
        let l = &self.labels;
        for b in &l.boundaries {
            if b.vertices.iter().any(|&v| v >= n) || b.edges.iter().any(|&e| e >= self.edges.len()) {
                return Err(Error::Structural(format!("boundary {} out of range", b.name)));
            }
        }
        if l.cones.iter().any(|&(v, b)| v >= n || b >= l.boundaries.len()) {
            return Err(Error::Structural("cone label out of range".into()));
        }
        if l.edge_kinds.as_ref().is_some_and(|k| k.len() != self.edges.len())
            || l.vertex_kinds.as_ref().is_some_and(|k| k.len() != n)
        {
            return Err(Error::Structural("label arrays do not match cell counts".into()));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn cell_count(&self) -> usize {
        self.vertex_count + self.edges.len() + self.faces.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<Side>] {
        &self.faces
    }

    pub fn start(&self, s: Side) -> usize {
        let (u, v) = self.edges[s.edge];
        if s.forward {
            u
        } else {
            v
        }
    }

    pub fn end(&self, s: Side) -> usize {
        let (u, v) = self.edges[s.edge];
        if s.forward {
            v
        } else {
            u
        }
    }

    pub fn is_cone(&self, v: usize) -> bool {
        self.labels.cones.iter().any(|&(c, _)| c == v)
    }

    /// 1-skeleton as a multigraph.
    pub fn skeleton(&self) -> Multigraph {
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| Edge { u, v, label: None })
            .collect();
        Multigraph::new(self.vertex_count, edges).expect("validated")
    }

    /// The labeled subgraph as a multigraph, vertices in the label's order.
    pub fn boundary_graph(&self, b: &BoundaryGraph) -> Multigraph {
        let mut index = BTreeMap::new();
        for (i, &v) in b.vertices.iter().enumerate() {
            index.insert(v, i);
        }
        let edges = b
            .edges
            .iter()
            .map(|&e| {
                let (u, v) = self.edges[e];
                Edge {
                    u: index[&u],
                    v: index[&v],
                    label: None,
                }
            })
            .collect();
        Multigraph::new(b.vertices.len(), edges).expect("boundary edges stay inside the boundary")
    }

    pub fn to_json(&self) -> ComplexJson {
        let cones: BTreeMap<usize, ()> = self.labels.cones.iter().map(|&(v, _)| (v, ())).collect();
        ComplexJson {
            vertices: (0..self.vertex_count)
                .map(|id| VertexJson {
                    id,
                    cone: cones.contains_key(&id),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(id, &(u, v))| CEdgeJson { id, u, v })
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|f| f.iter().map(|s| s.signed()).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }

    /// Loads complex JSON whose vertex and edge ids are positions.
    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        if j.vertices.iter().enumerate().any(|(i, v)| v.id != i)
            || j.edges.iter().enumerate().any(|(i, e)| e.id != i)
        {
            return Err(Error::Structural("complex ids must be consecutive positions".into()));
        }
        let faces = j
            .faces
            .iter()
            .map(|f| f.iter().map(|&r| Side::from_signed(r)).collect())
            .collect::<Result<_>>()?;
        let edges = j.edges.iter().map(|e| (e.u, e.v)).collect();
        let mut labels = j.labels.clone();
        for v in &j.vertices {
            if v.cone && !labels.cones.iter().any(|&(c, _)| c == v.id) {
                return Err(Error::Structural(format!(
                    "vertex {} is flagged as a cone but has no cone label",
                    v.id
                )));
            }
        }
        labels.cones.sort_unstable();
        Complex2::new(j.vertices.len(), edges, faces)?.with_labels(labels)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub cone: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CEdgeJson {
    pub id: usize,
    pub u: usize,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<CEdgeJson>,
    pub faces: Vec<Vec<i64>>,
    pub labels: ComplexLabels,
}

pub fn euler_characteristic(c: &Complex2) -> i64 {
    c.vertex_count() as i64 - c.edge_count() as i64 + c.face_count() as i64
}

/// Link vertex for the end of `edge` at its tail (`0`) or head (`1`).
pub type EdgeEnd = (usize, u8);

fn arriving_end(s: Side) -> EdgeEnd {
    (s.edge, if s.forward { 1 } else { 0 })
}

fn leaving_end(s: Side) -> EdgeEnd {
    (s.edge, if s.forward { 0 } else { 1 })
}

/// Links of all vertices at once: one link vertex per edge-end, one link edge per face
/// corner. Link vertices are numbered in sorted edge-end order.
pub fn all_vertex_links(c: &Complex2) -> Vec<Multigraph> {
    let n = c.vertex_count();
    let mut ends: Vec<Vec<EdgeEnd>> = vec![Vec::new(); n];
    for (i, &(u, v)) in c.edges().iter().enumerate() {
        ends[u].push((i, 0));
        ends[v].push((i, 1));
    }
    for list in &mut ends {
        list.sort_unstable();
    }
    let mut corners: Vec<Vec<(EdgeEnd, EdgeEnd)>> = vec![Vec::new(); n];
    for f in c.faces() {
        for i in 0..f.len() {
            let a = f[i];
            let b = f[(i + 1) % f.len()];
            corners[c.end(a)].push((arriving_end(a), leaving_end(b)));
        }
    }
    (0..n)
        .map(|v| {
            let pos = |e: &EdgeEnd| ends[v].binary_search(e).expect("corner edge-end at v");
            let edges = corners[v]
                .iter()
                .map(|(a, b)| Edge {
                    u: pos(a),
                    v: pos(b),
                    label: None,
                })
                .collect();
            Multigraph::new(ends[v].len(), edges).expect("positions in range")
        })
        .collect()
}

pub fn vertex_link(c: &Complex2, v: usize) -> Result<Multigraph> {
    if v >= c.vertex_count() {
        return Err(Error::Structural(format!("vertex {v} does not exist")));
    }
    let mut ends: Vec<EdgeEnd> = Vec::new();
    for (i, &(a, b)) in c.edges().iter().enumerate() {
        if a == v {
            ends.push((i, 0));
        }
        if b == v {
            ends.push((i, 1));
        }
    }
    ends.sort_unstable();
    let pos = |e: &EdgeEnd| ends.binary_search(e).expect("corner edge-end at v");
    let mut edges = Vec::new();
    for f in c.faces() {
        for i in 0..f.len() {
            let a = f[i];
            let b = f[(i + 1) % f.len()];
            if c.end(a) == v {
                edges.push(Edge {
                    u: pos(&arriving_end(a)),
                    v: pos(&leaving_end(b)),
                    label: None,
                });
            }
        }
    }
    Multigraph::new(ends.len(), edges)
}
