use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Bundled prism combinatorics; the angle label `"k"` is substituted at load time.
pub const PRISM_DATA: &str = include_str!("../../data/prism.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub id: String,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleSub {
    Fixed(u32),
    Symbol(String),
}

fn default_angle() -> AngleSub {
    AngleSub::Fixed(2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralJson {
    pub f1: String,
    pub f2: String,
    #[serde(default = "default_angle")]
    pub angle_sub: AngleSub,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedronJson {
    pub faces: Vec<FaceJson>,
    pub edges: Vec<DihedralJson>,
    pub boundary_face: String,
    pub sigma_face: String,
    pub bold_edge: [String; 2],
    /// Two faces through a corner of the boundary face across which it is unfolded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unfold: Option<[String; 2]>,
}

/// A combinatorial polyhedron with dihedral angles `π/n` on its edges.
#[derive(Debug, Clone, PartialEq)]
pub struct AngledPolyhedron {
    pub faces: Vec<FaceJson>,
    labels: BTreeMap<(usize, usize), u32>,
    pub boundary_face: usize,
    pub sigma_face: usize,
    pub bold_edge: (usize, usize),
    pub unfold: Option<(usize, usize)>,
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

impl AngledPolyhedron {
    /// Parses polyhedron JSON; symbolic labels are looked up in `symbols`.
    pub fn from_json(j: &PolyhedronJson, symbols: &[(&str, u32)]) -> Result<Self> {
        let index: BTreeMap<&str, usize> =
            j.faces.iter().enumerate().map(|(i, f)| (f.id.as_str(), i)).collect();
        if index.len() != j.faces.len() {
            return Err(Error::Structural("duplicate face id".into()));
        }
        let face = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Structural(format!("unknown face {id:?}")))
        };
        let mut labels = BTreeMap::new();
        for e in &j.edges {
            let (a, b) = (face(&e.f1)?, face(&e.f2)?);
            if a == b {
                return Err(Error::Structural(format!("face {} adjacent to itself", e.f1)));
            }
            let n = match &e.angle_sub {
                AngleSub::Fixed(n) => *n,
                AngleSub::Symbol(s) => symbols
                    .iter()
                    .find(|(name, _)| name == s)
                    .map(|&(_, v)| v)
                    .ok_or_else(|| Error::Parameter(format!("unbound angle symbol {s:?}")))?,
            };
            if labels.insert(key(a, b), n).is_some() {
                return Err(Error::Structural(format!("edge {}–{} listed twice", e.f1, e.f2)));
            }
        }
        let unfold = match &j.unfold {
            Some([a, b]) => Some((face(a)?, face(b)?)),
            None => None,
        };
        let ap = Self {
            faces: j.faces.clone(),
            labels,
            boundary_face: face(&j.boundary_face)?,
            sigma_face: face(&j.sigma_face)?,
            bold_edge: (face(&j.bold_edge[0])?, face(&j.bold_edge[1])?),
            unfold,
        };
        ap.validate()?;
        Ok(ap)
    }

    pub fn to_json(&self) -> PolyhedronJson {
        let id = |i: usize| self.faces[i].id.clone();
        PolyhedronJson {
            faces: self.faces.clone(),
            edges: self
                .labels
                .iter()
                .map(|(&(a, b), &n)| DihedralJson {
                    f1: id(a),
                    f2: id(b),
                    angle_sub: AngleSub::Fixed(n),
                })
                .collect(),
            boundary_face: id(self.boundary_face),
            sigma_face: id(self.sigma_face),
            bold_edge: [id(self.bold_edge.0), id(self.bold_edge.1)],
            unfold: self.unfold.map(|(a, b)| [id(a), id(b)]),
        }
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_index(&self, id: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.id == id)
    }

    pub fn label(&self, i: usize, j: usize) -> Option<u32> {
        self.labels.get(&key(i, j)).copied()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.labels.contains_key(&key(i, j))
    }

    /// Dihedral angle `π/n` of an edge.
    pub fn angle(&self, i: usize, j: usize) -> Option<f64> {
        self.label(i, j).map(|n| PI / n as f64)
    }

    /// Edges as `(f1, f2, n)` with `f1 < f2`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        self.labels.iter().map(|(&(a, b), &n)| (a, b, n)).collect()
    }

    pub fn neighbors(&self, f: usize) -> Vec<usize> {
        (0..self.face_count()).filter(|&g| self.adjacent(f, g)).collect()
    }

    fn triangles(&self) -> Vec<[usize; 3]> {
        let n = self.face_count();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if self.adjacent(a, b) && self.adjacent(b, c) && self.adjacent(a, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    fn separates(&self, t: &[usize; 3]) -> bool {
        let n = self.face_count();
        let rest: Vec<usize> = (0..n).filter(|f| !t.contains(f)).collect();
        let Some(&start) = rest.first() else { return false };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            for g in self.neighbors(f) {
                if !t.contains(&g) && !seen[g] {
                    seen[g] = true;
                    stack.push(g);
                }
            }
        }
        rest.iter().any(|&f| !seen[f])
    }

    /// Combinatorial vertices: mutually adjacent face triples that do not separate.
    pub fn vertices(&self) -> Vec<[usize; 3]> {
        self.triangles().into_iter().filter(|t| !self.separates(t)).collect()
    }

    /// Prismatic 3-circuits: mutually adjacent triples that are not vertices.
    pub fn prismatic_circuits(&self) -> Vec<[usize; 3]> {
        self.triangles().into_iter().filter(|t| self.separates(t)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.face_count();
        if f < 4 {
            return Err(Error::Structural(format!("{f} faces")));
        }
        if let Some(&n) = self.labels.values().find(|&&n| n < 2) {
            return Err(Error::Structural(format!("angle label {n} < 2")));
        }
        for i in 0..f {
            if self.neighbors(i).len() < 3 {
                return Err(Error::Structural(format!("face {} has < 3 neighbors", self.faces[i].id)));
            }
        }
        let (v, e) = (self.vertices().len(), self.labels.len());
        if v != 2 * f - 4 || e != 3 * f - 6 {
            return Err(Error::Structural(format!(
                "not a simple polyhedron: {f} faces, {e} edges, {v} vertices"
            )));
        }
        if !self.adjacent(self.bold_edge.0, self.bold_edge.1) {
            return Err(Error::Structural("bold edge is not an edge".into()));
        }
        if self.bold_edge.0 != self.boundary_face && self.bold_edge.1 != self.boundary_face {
            return Err(Error::Structural("bold edge does not lie on the boundary face".into()));
        }
        if let Some((a, b)) = self.unfold {
            if !self.vertices().contains(&sorted3(a, b, self.boundary_face)) {
                return Err(Error::Structural("unfolding faces do not meet the boundary face at a vertex".into()));
            }
        }
        Ok(())
    }

    /// Vertex angle sums exceed π and prismatic 3-circuit sums stay below π.
    pub fn andreev_precheck(&self) -> Result<()> {
        let sum = |t: &[usize; 3]| {
            self.angle(t[0], t[1]).unwrap() + self.angle(t[1], t[2]).unwrap() + self.angle(t[0], t[2]).unwrap()
        };
        let name = |t: &[usize; 3]| {
            t.iter().map(|&i| self.faces[i].id.as_str()).collect::<Vec<_>>().join("/")
        };
        for t in self.vertices() {
            if sum(&t) <= PI + 1e-12 {
                return Err(Error::AndreevViolation(format!("vertex {} has angle sum {} <= π", name(&t), sum(&t))));
            }
        }
        for t in self.prismatic_circuits() {
            if sum(&t) >= PI - 1e-12 {
                return Err(Error::AndreevViolation(format!(
                    "prismatic 3-circuit {} has angle sum {} >= π",
                    name(&t),
                    sum(&t)
                )));
            }
        }
        Ok(())
    }

    /// Faces not adjacent to the boundary face.
    pub fn faces_disjoint_from_boundary(&self) -> Vec<usize> {
        (0..self.face_count())
            .filter(|&g| g != self.boundary_face && !self.adjacent(g, self.boundary_face))
            .collect()
    }
}

fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// The pentagonal prism with the label `k` substituted.
pub fn prism_combinatorics(k: u32) -> Result<AngledPolyhedron> {
    if k < 2 {
        return Err(Error::Parameter(format!("angle label k = {k} must be at least 2")));
    }
    let j: PolyhedronJson = serde_json::from_str(PRISM_DATA)?;
    AngledPolyhedron::from_json(&j, &[("k", k)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prism_shape() {
        let p = prism_combinatorics(18).unwrap();
        assert_eq!((p.face_count(), p.edges().len(), p.vertices().len()), (7, 15, 10));
        let disjoint = p.faces_disjoint_from_boundary();
        assert_eq!(disjoint.len(), 2);
        assert!(disjoint.contains(&p.sigma_face));
        for g in p.neighbors(p.boundary_face) {
            assert_eq!(p.label(g, p.boundary_face), Some(2));
        }
        assert!(p.prismatic_circuits().is_empty());
        p.andreev_precheck().unwrap();
    }

    #[test]
    fn right_triangular_prism_fails_precheck() {
        let f = |id: &str| FaceJson { id: id.into(), name: id.into() };
        let e = |a: &str, b: &str| DihedralJson { f1: a.into(), f2: b.into(), angle_sub: AngleSub::Fixed(2) };
        let j = PolyhedronJson {
            faces: ["T", "B", "L1", "L2", "L3"].map(f).to_vec(),
            edges: vec![
                e("T", "L1"), e("T", "L2"), e("T", "L3"),
                e("B", "L1"), e("B", "L2"), e("B", "L3"),
                e("L1", "L2"), e("L2", "L3"), e("L3", "L1"),
            ],
            boundary_face: "T".into(),
            sigma_face: "B".into(),
            bold_edge: ["T".into(), "L1".into()],
            unfold: None,
        };
        let p = AngledPolyhedron::from_json(&j, &[]).unwrap();
        assert_eq!(p.prismatic_circuits().len(), 1);
        assert!(matches!(p.andreev_precheck(), Err(Error::AndreevViolation(_))));
    }

    #[test]
    fn json_round_trip() {
        let p = prism_combinatorics(7).unwrap();
        let q = AngledPolyhedron::from_json(&p.to_json(), &[]).unwrap();
        assert_eq!(p, q);
    }
}
