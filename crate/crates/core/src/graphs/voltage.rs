use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

use super::group::{FiniteGroup, GroupJson, MatrixGroup, MatrixKind};
use super::multigraph::{Edge, GraphJson, Multigraph};
use crate::error::{Error, Result};

/// Group-valued labels on the canonically oriented edges of a base graph.
/// Traversing an edge backwards picks up the inverse voltage.
#[derive(Debug, Clone)]
pub struct VoltageAssignment {
    pub base: Multigraph,
    pub group: FiniteGroup,
    pub voltages: Vec<usize>,
}

impl VoltageAssignment {
    pub fn new(base: Multigraph, group: FiniteGroup, voltages: Vec<usize>) -> Result<Self> {
        if voltages.len() != base.edge_count() {
            return Err(Error::Structural(format!(
                "{} voltages for {} edges",
                voltages.len(),
                base.edge_count()
            )));
        }
        if let Some(&bad) = voltages.iter().find(|&&x| x >= group.order()) {
            return Err(Error::Structural(format!("voltage {bad} outside the group")));
        }
        Ok(Self {
            base,
            group,
            voltages,
        })
    }

    /// Fails unless every listed tree edge carries the identity.
    pub fn check_normalized(&self, tree_edges: &[usize]) -> Result<()> {
        for &e in tree_edges {
            if self.voltages.get(e) != Some(&self.group.identity()) {
                return Err(Error::Structural(format!(
                    "tree edge {e} does not carry the identity"
                )));
            }
        }
        Ok(())
    }

    /// Voltage picked up walking edge `e` forwards or backwards.
    pub fn along(&self, e: usize, forward: bool) -> usize {
        let g = self.voltages[e];
        if forward {
            g
        } else {
            self.group.inv(g)
        }
    }

    pub fn to_json(&self) -> VoltageJson {
        VoltageJson {
            graph: self.base.to_json(),
            group: self.group.descriptor(),
            voltages: self
                .voltages
                .iter()
                .enumerate()
                .map(|(e, &g)| (e, self.group.element_json(g)))
                .collect(),
        }
    }

    /// Loads voltage JSON. Matrix voltages are placed in the subgroup they generate.
    pub fn from_json(j: &VoltageJson) -> Result<Self> {
        let (base, ids) = Multigraph::from_json(&j.graph)?;
        let raw: Vec<&Value> = ids
            .iter()
            .map(|id| {
                j.voltages
                    .get(id)
                    .ok_or_else(|| Error::Structural(format!("edge {id} has no voltage")))
            })
            .collect::<Result<_>>()?;
        let group = match j.group.kind.as_str() {
            "Z" => FiniteGroup::Cyclic(j.group.modulus.max(1)),
            "PSL" | "PGL" => {
                let kind = if j.group.kind == "PSL" {
                    MatrixKind::Psl
                } else {
                    MatrixKind::Pgl
                };
                let mats: Vec<[u64; 4]> = raw
                    .iter()
                    .map(|v| {
                        serde_json::from_value::<[u64; 4]>((*v).clone()).map_err(|_| {
                            Error::Structural(format!("matrix voltage {v} malformed"))
                        })
                    })
                    .collect::<Result<_>>()?;
                FiniteGroup::matrix(MatrixGroup::generated(j.group.modulus, kind, &mats)?)
            }
            other => return Err(Error::Structural(format!("unknown group type {other}"))),
        };
        let voltages = raw
            .iter()
            .map(|v| group.element_from_json(v))
            .collect::<Result<_>>()?;
        Self::new(base, group, voltages)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VoltageJson {
    #[serde(flatten)]
    pub graph: GraphJson,
    pub group: GroupJson,
    pub voltages: BTreeMap<usize, Value>,
}

/// Cell-wise map from a cover to its base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringMap {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

impl CoveringMap {
    pub fn identity(g: &Multigraph) -> Self {
        Self {
            vertex_map: (0..g.vertex_count()).collect(),
            edge_map: (0..g.edge_count()).collect(),
        }
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &CoveringMap) -> CoveringMap {
        CoveringMap {
            vertex_map: self.vertex_map.iter().map(|&v| then.vertex_map[v]).collect(),
            edge_map: self.edge_map.iter().map(|&e| then.edge_map[e]).collect(),
        }
    }
}

/// Derived cover: vertex `(v, x)` has index `v·|G| + x`, edge `(e, x)` index `e·|G| + x`,
/// and base edge `u -> v` with voltage `g` lifts to `(u, x) -> (v, x·g)`.
pub fn voltage_cover(va: &VoltageAssignment) -> (Multigraph, CoveringMap) {
    let n = va.group.order();
    let mut edges = Vec::with_capacity(va.base.edge_count() * n);
    let mut edge_map = Vec::with_capacity(va.base.edge_count() * n);
    for (e, be) in va.base.edges().iter().enumerate() {
        let g = va.voltages[e];
        for x in 0..n {
            edges.push(Edge {
                u: be.u * n + x,
                v: be.v * n + va.group.mul(x, g),
                label: Some(be.label.unwrap_or(e)),
            });
            edge_map.push(e);
        }
    }
    let vertex_map = (0..va.base.vertex_count())
        .flat_map(|v| std::iter::repeat_n(v, n))
        .collect();
    let cover = Multigraph::new(va.base.vertex_count() * n, edges).expect("indices in range");
    (
        cover,
        CoveringMap {
            vertex_map,
            edge_map,
        },
    )
}

/// True iff `map` is an orientation-preserving graph map that is a bijection on
/// edge-ends at every cover vertex.
pub fn check_covering(cover: &Multigraph, base: &Multigraph, map: &CoveringMap) -> Result<bool> {
    if map.vertex_map.len() != cover.vertex_count() || map.edge_map.len() != cover.edge_count() {
        return Err(Error::Structural(
            "covering map sizes do not match the cover".into(),
        ));
    }
    if map.vertex_map.iter().any(|&v| v >= base.vertex_count())
        || map.edge_map.iter().any(|&e| e >= base.edge_count())
    {
        return Err(Error::Structural(
            "covering map references cells missing from the base".into(),
        ));
    }
    for (i, e) in cover.edges().iter().enumerate() {
        let b = base.edge(map.edge_map[i]);
        if map.vertex_map[e.u] != b.u || map.vertex_map[e.v] != b.v {
            return Ok(false);
        }
    }
    let ends = |g: &Multigraph| {
        let mut ends = vec![Vec::new(); g.vertex_count()];
        for (i, e) in g.edges().iter().enumerate() {
            ends[e.u].push((i, 0u8));
            ends[e.v].push((i, 1u8));
        }
        ends
    };
    let mut base_ends = ends(base);
    for list in &mut base_ends {
        list.sort_unstable();
    }
    for (x, list) in ends(cover).into_iter().enumerate() {
        let mut image: Vec<_> = list
            .into_iter()
            .map(|(e, end)| (map.edge_map[e], end))
            .collect();
        image.sort_unstable();
        if image != base_ends[map.vertex_map[x]] {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{girth, theta_graph};

    #[test]
    fn theta2_over_z5_is_a_10_cycle() {
        let va = VoltageAssignment::new(theta_graph(2).unwrap(), FiniteGroup::Cyclic(5), vec![1, 0])
            .unwrap();
        let (c, map) = voltage_cover(&va);
        assert_eq!(c.vertex_count(), 10);
        assert_eq!(c.edge_count(), 10);
        assert!(c.is_connected());
        assert!(c.degrees().iter().all(|&d| d == 2));
        assert_eq!(girth(&c), Some(10));
        assert!(check_covering(&c, &va.base, &map).unwrap());
    }

    #[test]
    fn trivial_group_gives_base() {
        let base = theta_graph(4).unwrap();
        let va = VoltageAssignment::new(base.clone(), FiniteGroup::trivial(), vec![0; 4]).unwrap();
        let (c, map) = voltage_cover(&va);
        assert_eq!(c, base);
        assert_eq!(map, CoveringMap::identity(&base));
    }

    #[test]
    fn collapsing_parallel_edges_is_not_a_cover() {
        let base = Multigraph::from_pairs(2, &[(0, 1)]).unwrap();
        let theta = theta_graph(2).unwrap();
        let map = CoveringMap {
            vertex_map: vec![0, 1],
            edge_map: vec![0, 0],
        };
        assert!(!check_covering(&theta, &base, &map).unwrap());
        assert!(check_covering(&theta, &theta, &CoveringMap::identity(&theta)).unwrap());
    }

    #[test]
    fn bad_map_is_structural_error() {
        let theta = theta_graph(2).unwrap();
        let map = CoveringMap {
            vertex_map: vec![0],
            edge_map: vec![0, 1],
        };
        assert!(check_covering(&theta, &theta, &map).is_err());
    }

    #[test]
    fn normalization_flag() {
        let va = VoltageAssignment::new(theta_graph(3).unwrap(), FiniteGroup::Cyclic(7), vec![2, 3, 0])
            .unwrap();
        assert!(va.check_normalized(&[2]).is_ok());
        assert!(va.check_normalized(&[0]).is_err());
    }

    #[test]
    fn voltage_json_round_trip() {
        let va = VoltageAssignment::new(theta_graph(3).unwrap(), FiniteGroup::Cyclic(7), vec![2, 3, 0])
            .unwrap();
        let text = serde_json::to_string(&va.to_json()).unwrap();
        assert!(text.contains("\"type\":\"Z\""));
        let back = VoltageAssignment::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.voltages, va.voltages);
        assert_eq!(back.base, va.base);
    }
}
