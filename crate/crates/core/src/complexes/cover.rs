use super::complex::{BoundaryGraph, Complex2, ComplexLabels, Side};
use super::turnover::{short_edge, truncated_turnover, BOUNDARY_CORNERS};
use crate::error::{Error, Result};
use crate::graphs::{FiniteGroup, Multigraph, VoltageAssignment};

/// Group-valued voltages on the oriented edges of a 2-complex.
#[derive(Debug, Clone)]
pub struct ComplexVoltage {
    pub base: Complex2,
    pub group: FiniteGroup,
    pub voltages: Vec<usize>,
    /// Ordered voltage product around each face boundary.
    pub holonomies: Vec<usize>,
}

impl ComplexVoltage {
    pub fn new(base: Complex2, group: FiniteGroup, voltages: Vec<usize>) -> Result<Self> {
        if voltages.len() != base.edge_count() || voltages.iter().any(|&g| g >= group.order()) {
            return Err(Error::Structural("voltages do not match the complex".into()));
        }
        let mut cv = Self {
            base,
            group,
            voltages,
            holonomies: Vec::new(),
        };
        cv.holonomies = cv
            .base
            .faces()
            .iter()
            .map(|f| cv.path_voltage(f))
            .collect();
        Ok(cv)
    }

    pub fn along(&self, s: Side) -> usize {
        let g = self.voltages[s.edge];
        if s.forward {
            g
        } else {
            self.group.inv(g)
        }
    }

    pub fn path_voltage(&self, path: &[Side]) -> usize {
        self.group.product_of(path.iter().map(|&s| self.along(s)))
    }

    pub fn faces_lift(&self) -> bool {
        self.holonomies.iter().all(|&h| h == self.group.identity())
    }

    /// Subgroup generated by all edge voltages.
    pub fn generated(&self) -> Vec<usize> {
        self.group.generated_subgroup(&self.voltages)
    }

    pub fn is_surjective(&self) -> bool {
        self.generated().len() == self.group.order()
    }
}

/// Boundary `i`'s Θ loop `x_j = e_j·e_k^{−1}` as a side path in T_0.
pub fn boundary_loop(k: usize, i: usize, j: usize) -> Vec<Side> {
    let c = BOUNDARY_CORNERS[i];
    vec![Side::fwd(short_edge(c, j)), Side::bwd(short_edge(c, k - 1))]
}

/// Voltages on T_0 in Q × Q from a Λ-cover `phi` of Θ_k, realizing the boundary maps
/// `(φ, 1)`, `(1, φ)` and `(φ∘τ, φ∘τ)` where `τ(x_j) = x_j^{−1}`.
pub fn phi_voltages(k: usize, phi: &VoltageAssignment) -> Result<ComplexVoltage> {
    if phi.base.vertex_count() != 2 || phi.base.edge_count() != k {
        return Err(Error::Parameter(format!("phi must live on theta_{k}")));
    }
    let q = &phi.group;
    let t0 = truncated_turnover(k)?;
    let qq = FiniteGroup::product(q.clone(), q.clone());
    let last_inv = q.inv(phi.voltages[k - 1]);
    let mut voltages = vec![qq.identity(); t0.edge_count()];
    for j in 0..k {
        // φ(x_j)
        let h = q.mul(phi.voltages[j], last_inv);
        let hi = q.inv(h);
        voltages[short_edge(1, j)] = qq.pair(h, q.identity());
        voltages[short_edge(2, j)] = qq.pair(q.identity(), h);
        voltages[short_edge(0, j)] = qq.pair(hi, hi);
    }
    let cv = ComplexVoltage::new(t0, qq, voltages)?;
    if let Some(face) = cv.holonomies.iter().position(|&h| h != cv.group.identity()) {
        return Err(Error::Internal(format!("hexagon {face} has nontrivial holonomy")));
    }
    Ok(cv)
}

type Pick = fn((usize, usize)) -> usize;

/// Voltages on Θ_k seen by the elevations of boundary `i`: the first factor on
/// boundaries 1 and 3, the second on boundary 2.
pub fn projected_voltages(cv: &ComplexVoltage, i: usize, k: usize) -> Result<VoltageAssignment> {
    let (a, b) = cv
        .group
        .factors()
        .ok_or_else(|| Error::Parameter("projection needs a product group".into()))?;
    let c = BOUNDARY_CORNERS[i];
    let (factor, pick): (&FiniteGroup, Pick) = if i == 1 {
        (b, |p| p.1)
    } else {
        (a, |p| p.0)
    };
    let voltages = (0..k)
        .map(|j| pick(cv.group.split(cv.voltages[short_edge(c, j)])))
        .collect();
    VoltageAssignment::new(crate::graphs::theta_graph(k)?, factor.clone(), voltages)
}

/// Cell map from a complex cover to its base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexCoveringMap {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub face_map: Vec<usize>,
}

/// Derived cover over the subgroup H generated by the voltages. Cell `(c, x)` has index
/// `c·|H| + pos(x)`. Lifted boundary graphs are split into their connected elevations.
pub fn cover_complex(cv: &ComplexVoltage) -> Result<(Complex2, ComplexCoveringMap)> {
    if let Some(face) = cv.holonomies.iter().position(|&h| h != cv.group.identity()) {
        return Err(Error::FaceHolonomy { face });
    }
    let sheets = cv.generated();
    let n = sheets.len();
    let mut pos = vec![usize::MAX; cv.group.order()];
    for (i, &x) in sheets.iter().enumerate() {
        pos[x] = i;
    }
    let base = &cv.base;
    let mut edges = Vec::with_capacity(base.edge_count() * n);
    for (e, &(u, v)) in base.edges().iter().enumerate() {
        for &x in &sheets {
            edges.push((u * n + pos[x], v * n + pos[cv.group.mul(x, cv.voltages[e])]));
        }
    }
    let mut faces = Vec::with_capacity(base.face_count() * n);
    for f in base.faces() {
        for &x in &sheets {
            // sheet at the start of each side
            let mut y = x;
            let mut lifted = Vec::with_capacity(f.len());
            for &s in f {
                if s.forward {
                    lifted.push(Side::fwd(s.edge * n + pos[y]));
                    y = cv.group.mul(y, cv.voltages[s.edge]);
                } else {
                    y = cv.group.mul(y, cv.group.inv(cv.voltages[s.edge]));
                    lifted.push(Side::bwd(s.edge * n + pos[y]));
                }
            }
            faces.push(lifted);
        }
    }
    let vertex_count = base.vertex_count() * n;
    let cover = Complex2::new(vertex_count, edges, faces)?;
    let mut boundaries = Vec::new();
    for b in &base.labels.boundaries {
        boundaries.extend(elevations(&cover, b, n));
    }
    let labels = ComplexLabels {
        boundaries,
        ..Default::default()
    };
    let map = ComplexCoveringMap {
        vertex_map: (0..vertex_count).map(|i| i / n).collect(),
        edge_map: (0..cover.edge_count()).map(|i| i / n).collect(),
        face_map: (0..cover.face_count()).map(|i| i / n).collect(),
    };
    Ok((cover.with_labels(labels)?, map))
}

fn elevations(cover: &Complex2, b: &BoundaryGraph, n: usize) -> Vec<BoundaryGraph> {
    let vertices: Vec<usize> = b
        .vertices
        .iter()
        .flat_map(|&v| (0..n).map(move |x| v * n + x))
        .collect();
    let edge_ids: Vec<usize> = b
        .edges
        .iter()
        .flat_map(|&e| (0..n).map(move |x| e * n + x))
        .collect();
    let mut index = vec![usize::MAX; cover.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        index[v] = i;
    }
    let pairs: Vec<(usize, usize)> = edge_ids
        .iter()
        .map(|&e| {
            let (u, v) = cover.edges()[e];
            (index[u], index[v])
        })
        .collect();
    let comp = Multigraph::from_pairs(vertices.len(), &pairs)
        .expect("lifted boundary edges stay in the lifted boundary")
        .components();
    let count = comp.iter().max().map_or(0, |m| m + 1);
    let mut out: Vec<BoundaryGraph> = (0..count)
        .map(|c| BoundaryGraph {
            name: format!("{}/{c}", b.name),
            vertices: Vec::new(),
            edges: Vec::new(),
        })
        .collect();
    for (i, &v) in vertices.iter().enumerate() {
        out[comp[i]].vertices.push(v);
    }
    for (&e, &(u, _)) in edge_ids.iter().zip(&pairs) {
        out[comp[u]].edges.push(e);
    }
    for o in &mut out {
        o.vertices.sort_unstable();
        o.edges.sort_unstable();
    }
    out
}

/// Checks that `map` sends every cover cell onto a base cell of the same shape and is
/// a local bijection on edge-ends and face corners.
pub fn check_complex_covering(cover: &Complex2, base: &Complex2, map: &ComplexCoveringMap) -> Result<bool> {
    if map.vertex_map.len() != cover.vertex_count()
        || map.edge_map.len() != cover.edge_count()
        || map.face_map.len() != cover.face_count()
    {
        return Err(Error::Structural("covering map sizes do not match the cover".into()));
    }
    if map.vertex_map.iter().any(|&v| v >= base.vertex_count())
        || map.edge_map.iter().any(|&e| e >= base.edge_count())
        || map.face_map.iter().any(|&f| f >= base.face_count())
    {
        return Err(Error::Structural("covering map references missing base cells".into()));
    }
    let graph_map = crate::graphs::CoveringMap {
        vertex_map: map.vertex_map.clone(),
        edge_map: map.edge_map.clone(),
    };
    if !crate::graphs::check_covering(&cover.skeleton(), &base.skeleton(), &graph_map)? {
        return Ok(false);
    }
    for (f, sides) in cover.faces().iter().enumerate() {
        let bf = &base.faces()[map.face_map[f]];
        if bf.len() != sides.len() {
            return Ok(false);
        }
        let image: Vec<Side> = sides
            .iter()
            .map(|s| Side {
                edge: map.edge_map[s.edge],
                forward: s.forward,
            })
            .collect();
        // the image must be a cyclic rotation of the base face
        let matches = (0..bf.len()).any(|r| (0..bf.len()).all(|i| image[i] == bf[(i + r) % bf.len()]));
        if !matches {
            return Ok(false);
        }
    }
    // each base face is covered the same number of times
    let mut counts = vec![0usize; base.face_count()];
    for &f in &map.face_map {
        counts[f] += 1;
    }
    let sheets = cover.vertex_count() / base.vertex_count().max(1);
    Ok(counts.iter().all(|&c| c == sheets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{all_vertex_links, cone_off, euler_characteristic, graphs_isomorphic};
    use crate::graphs::{theta_graph, voltage_cover};

    fn cyclic_phi(k: usize, n: u64) -> VoltageAssignment {
        let voltages = (0..k).map(|j| (j + 1) % n as usize).collect();
        VoltageAssignment::new(theta_graph(k).unwrap(), FiniteGroup::Cyclic(n), voltages).unwrap()
    }

    #[test]
    fn trivial_group_gives_t0() {
        let phi = VoltageAssignment::new(theta_graph(3).unwrap(), FiniteGroup::trivial(), vec![0; 3]).unwrap();
        let cv = phi_voltages(3, &phi).unwrap();
        assert!(cv.voltages.iter().all(|&g| g == 0));
        let (c, map) = cover_complex(&cv).unwrap();
        assert_eq!(c.cell_count(), cv.base.cell_count());
        assert!(check_complex_covering(&c, &cv.base, &map).unwrap());
    }

    #[test]
    fn boundary_images_match_the_display() {
        let k = 5;
        let phi = cyclic_phi(k, 7);
        let cv = phi_voltages(k, &phi).unwrap();
        let q = &phi.group;
        let qq = &cv.group;
        for j in 0..k {
            let x = q.mul(phi.voltages[j], q.inv(phi.voltages[k - 1]));
            let tx = q.inv(x);
            let want = [qq.pair(x, 0), qq.pair(0, x), qq.pair(tx, tx)];
            let got: Vec<usize> = (0..3).map(|i| cv.path_voltage(&boundary_loop(k, i, j))).collect();
            assert_eq!(got, want, "j={j}");
            assert_eq!(qq.product_of(got), qq.identity());
        }
    }

    #[test]
    fn toy_cover_characteristic() {
        let cv = phi_voltages(4, &cyclic_phi(4, 3)).unwrap();
        assert!(cv.is_surjective());
        let (c, map) = cover_complex(&cv).unwrap();
        assert_eq!(euler_characteristic(&c), 9 * -5);
        assert!(check_complex_covering(&c, &cv.base, &map).unwrap());
        // each boundary lifts to 3 elevations, each a 6-cycle-with-parallel-structure Θ cover
        assert_eq!(c.labels.boundaries.len(), 9);
    }

    #[test]
    fn cone_links_are_theta_covers() {
        let k = 4;
        let phi = cyclic_phi(k, 5);
        let cv = phi_voltages(k, &phi).unwrap();
        let (c, _) = cover_complex(&cv).unwrap();
        let hat = cone_off(&c).unwrap();
        let links = all_vertex_links(&hat);
        let (lambda, _) = voltage_cover(&phi);
        for &(w, bi) in &hat.labels.cones {
            let i = bi / 5;
            let (expected, _) = voltage_cover(&projected_voltages(&cv, i, k).unwrap());
            assert!(graphs_isomorphic(&links[w], &expected).unwrap().is_some());
            assert!(graphs_isomorphic(&links[w], &lambda).unwrap().is_some());
        }
    }

    #[test]
    fn nonlifting_face_rejected() {
        let t0 = crate::complexes::truncated_turnover(3).unwrap();
        let mut v = vec![0; t0.edge_count()];
        v[0] = 1;
        let cv = ComplexVoltage::new(t0, FiniteGroup::Cyclic(2), v).unwrap();
        assert!(matches!(cover_complex(&cv), Err(Error::FaceHolonomy { .. })));
    }
}
