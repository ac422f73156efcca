use nalgebra::{DMatrix, DVector, SymmetricEigen, Vector3, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::lorentz::{lorentz_cross, lower, mdot, point_distance, to_hyperboloid, LorentzVec};
use super::polyhedron::AngledPolyhedron;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub seed: u64,
    pub restart_budget: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            restart_budget: 64,
            max_iterations: 200,
            tolerance: 1e-13,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyVertex {
    pub faces: [usize; 3],
    pub point: LorentzVec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizedPolyhedron {
    pub poly: AngledPolyhedron,
    /// Outward unit normals: the polyhedron is `{x : ⟨x, e_i⟩ ≤ 0}`.
    pub normals: Vec<LorentzVec>,
    pub gram: DMatrix<f64>,
    pub vertices: Vec<PolyVertex>,
    /// ∞-norm of the unit and angle equations at the returned normals.
    pub residual: f64,
    /// Index of the restart that converged.
    pub restart: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationReport {
    pub residual: f64,
    pub positive: usize,
    pub negative: usize,
    pub near_zero: usize,
    /// Largest Gram entry over non-adjacent pairs (must be < −1).
    pub max_nonadjacent: f64,
    /// Largest `⟨v, e_i⟩` over vertices and faces (must be ≤ 0 up to tolerance).
    pub max_vertex_side: f64,
}

fn gram_of(normals: &[LorentzVec]) -> DMatrix<f64> {
    let n = normals.len();
    DMatrix::from_fn(n, n, |i, j| mdot(&normals[i], &normals[j]))
}

/// Residual of the unit and angle equations, recomputed from the normals alone.
pub fn equation_residual(ap: &AngledPolyhedron, normals: &[LorentzVec]) -> f64 {
    let mut r: f64 = 0.0;
    for e in normals {
        r = r.max((mdot(e, e) - 1.0).abs());
    }
    for (i, j, n) in ap.edges() {
        r = r.max((mdot(&normals[i], &normals[j]) + (PI / n as f64).cos()).abs());
    }
    r
}

struct System<'a> {
    ap: &'a AngledPolyhedron,
    edges: Vec<(usize, usize, f64)>,
    gauge: [usize; 3],
}

impl System<'_> {
    fn unknowns(&self) -> usize {
        4 * self.ap.face_count()
    }

    fn normals(x: &DVector<f64>) -> Vec<LorentzVec> {
        (0..x.len() / 4)
            .map(|i| Vector4::new(x[4 * i], x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]))
            .collect()
    }

    fn eval(&self, x: &DVector<f64>) -> DVector<f64> {
        let e = Self::normals(x);
        let mut f = Vec::with_capacity(self.unknowns());
        f.extend(e.iter().map(|v| mdot(v, v) - 1.0));
        f.extend(self.edges.iter().map(|&(i, j, c)| mdot(&e[i], &e[j]) + c));
        let [a, b, c] = self.gauge;
        f.extend([e[a][1], e[a][2], e[a][3], e[b][2], e[b][3], e[c][3]]);
        DVector::from_vec(f)
    }

    fn jacobian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let e = Self::normals(x);
        let n = self.unknowns();
        let mut jac = DMatrix::zeros(n, n);
        let mut row = 0;
        for (i, v) in e.iter().enumerate() {
            let g = lower(v) * 2.0;
            for c in 0..4 {
                jac[(row, 4 * i + c)] = g[c];
            }
            row += 1;
        }
        for &(i, j, _) in &self.edges {
            let (gi, gj) = (lower(&e[j]), lower(&e[i]));
            for c in 0..4 {
                jac[(row, 4 * i + c)] = gi[c];
                jac[(row, 4 * j + c)] = gj[c];
            }
            row += 1;
        }
        let [a, b, c] = self.gauge;
        for (face, coord) in [(a, 1), (a, 2), (a, 3), (b, 2), (b, 3), (c, 3)] {
            jac[(row, 4 * face + coord)] = 1.0;
            row += 1;
        }
        jac
    }

    fn newton(&self, mut x: DVector<f64>, opts: &SolverOptions) -> (DVector<f64>, f64) {
        let mut f = self.eval(&x);
        let mut norm = f.norm_squared();
        for _ in 0..opts.max_iterations {
            if f.amax() < opts.tolerance {
                break;
            }
            let Some(dx) = self.jacobian(&x).lu().solve(&(-&f)) else { break };
            let mut t = 1.0;
            loop {
                let cand = &x + &dx * t;
                let fc = self.eval(&cand);
                let nc = fc.norm_squared();
                if nc < (1.0 - 1e-4 * t) * norm || (t < 1e-3 && nc < norm) {
                    x = cand;
                    f = fc;
                    norm = nc;
                    break;
                }
                t *= 0.5;
                if t < 1e-10 {
                    return (x, f.amax());
                }
            }
        }
        (x, f.amax())
    }
}

/// Unit directions for the faces from the spectral embedding of the face adjacency graph,
/// which places the faces of a simple polyhedron roughly like a Euclidean model of it.
fn spectral_directions(ap: &AngledPolyhedron) -> Vec<Vector3<f64>> {
    let f = ap.face_count();
    let lap = DMatrix::from_fn(f, f, |i, j| {
        if i == j {
            ap.neighbors(i).len() as f64
        } else if ap.adjacent(i, j) {
            -1.0
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(lap);
    let mut order: Vec<usize> = (0..f).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    (0..f)
        .map(|i| {
            let v = Vector3::from_fn(|c, _| eig.eigenvectors[(i, order[c + 1])]);
            v / v.norm().max(1e-12)
        })
        .collect()
}

/// Initial guess: planes at distance `d` from the origin with directions from the
/// combinatorial embedding, randomly perturbed.
fn initial_guess(dirs: &[Vector3<f64>], rng: &mut ChaCha8Rng) -> DVector<f64> {
    let f = dirs.len();
    let mut x = DVector::zeros(4 * f);
    let d: f64 = rng.gen_range(0.3..1.0);
    for (i, dir) in dirs.iter().enumerate() {
        let n = dir + Vector3::from_fn(|_, _| rng.gen_range(-0.2..0.2));
        let n = n / n.norm();
        for c in 0..3 {
            x[4 * i + c] = d.cosh() * n[c];
        }
        x[4 * i + 3] = d.sinh();
    }
    x
}

fn compute_vertices(ap: &AngledPolyhedron, normals: &[LorentzVec]) -> Option<Vec<PolyVertex>> {
    ap.vertices()
        .into_iter()
        .map(|t| {
            let v = lorentz_cross(&normals[t[0]], &normals[t[1]], &normals[t[2]]);
            to_hyperboloid(&v).map(|point| PolyVertex { faces: t, point })
        })
        .collect()
}

fn max_vertex_side(vertices: &[PolyVertex], normals: &[LorentzVec]) -> f64 {
    vertices
        .iter()
        .flat_map(|v| normals.iter().map(move |e| mdot(&v.point, e)))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Finds outward face normals realizing the prescribed dihedral angles.
pub fn realize_polyhedron(ap: &AngledPolyhedron) -> Result<RealizedPolyhedron> {
    realize_polyhedron_with(ap, &SolverOptions::default())
}

pub fn realize_polyhedron_with(ap: &AngledPolyhedron, opts: &SolverOptions) -> Result<RealizedPolyhedron> {
    ap.validate()?;
    ap.andreev_precheck()?;
    let gauge = ap.vertices()[0];
    let sys = System {
        ap,
        edges: ap.edges().into_iter().map(|(i, j, n)| (i, j, (PI / n as f64).cos())).collect(),
        gauge,
    };
    let dirs = spectral_directions(ap);
    let mut best = f64::INFINITY;
    for restart in 0..opts.restart_budget {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(restart as u64);
        let (x, res) = sys.newton(initial_guess(&dirs, &mut rng), opts);
        best = best.min(res);
        if !(res < opts.tolerance) {
            continue;
        }
        let mut normals = System::normals(&x);
        // Normalize the residual discrete gauge freedom.
        let [a, b, c] = gauge;
        for (face, coord) in [(a, 0), (b, 1), (c, 2)] {
            if normals[face][coord] < 0.0 {
                normals.iter_mut().for_each(|e| e[coord] = -e[coord]);
            }
        }
        let Some(mut vertices) = compute_vertices(ap, &normals) else { continue };
        if max_vertex_side(&vertices, &normals) > 1e-9 {
            // Inward normals: time reversal turns them outward.
            normals.iter_mut().for_each(|e| e[3] = -e[3]);
            match compute_vertices(ap, &normals) {
                Some(v) => vertices = v,
                None => continue,
            }
        }
        let rp = RealizedPolyhedron {
            poly: ap.clone(),
            gram: gram_of(&normals),
            residual: equation_residual(ap, &normals),
            normals,
            vertices,
            restart,
        };
        if check_realization(&rp).is_ok() {
            return Ok(rp);
        }
    }
    Err(Error::Realization {
        restarts: opts.restart_budget,
        best_residual: best,
    })
}

impl RealizedPolyhedron {
    pub fn report(&self) -> RealizationReport {
        let eig = SymmetricEigen::new(self.gram.clone()).eigenvalues;
        let n = self.poly.face_count();
        let mut max_nonadjacent = f64::NEG_INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                if !self.poly.adjacent(i, j) {
                    max_nonadjacent = max_nonadjacent.max(self.gram[(i, j)]);
                }
            }
        }
        RealizationReport {
            residual: equation_residual(&self.poly, &self.normals),
            positive: eig.iter().filter(|&&x| x > 1e-8).count(),
            negative: eig.iter().filter(|&&x| x < -1e-8).count(),
            near_zero: eig.iter().filter(|&&x| x.abs() <= 1e-8).count(),
            max_nonadjacent,
            max_vertex_side: max_vertex_side(&self.vertices, &self.normals),
        }
    }

    pub fn vertex(&self, faces: [usize; 3]) -> Option<&LorentzVec> {
        let mut t = faces;
        t.sort_unstable();
        self.vertices.iter().find(|v| v.faces == t).map(|v| &v.point)
    }

    /// Endpoints of the edge between two adjacent faces.
    pub fn edge_endpoints(&self, f: usize, g: usize) -> Result<(LorentzVec, LorentzVec)> {
        let ends: Vec<LorentzVec> = self
            .vertices
            .iter()
            .filter(|v| v.faces.contains(&f) && v.faces.contains(&g))
            .map(|v| v.point)
            .collect();
        match ends.as_slice() {
            [a, b] => Ok((*a, *b)),
            _ => Err(Error::Domain(format!("faces {f} and {g} do not share an edge"))),
        }
    }

    /// Applies a Lorentz transformation to all normals and vertices.
    pub fn transformed(&self, m: &nalgebra::Matrix4<f64>) -> Self {
        let mut out = self.clone();
        out.normals.iter_mut().for_each(|e| *e = m * *e);
        out.vertices.iter_mut().for_each(|v| v.point = m * v.point);
        out.gram = gram_of(&out.normals);
        out
    }
}

pub fn check_realization(rp: &RealizedPolyhedron) -> Result<RealizationReport> {
    let r = rp.report();
    let n = rp.poly.face_count();
    let ok = r.residual < 1e-10
        && r.positive == 3
        && r.negative == 1
        && r.near_zero == n - 4
        && r.max_nonadjacent < -1.0
        && r.max_vertex_side <= 1e-10;
    if ok {
        Ok(r)
    } else {
        Err(Error::Internal(format!("realization invariants violated: {r:?}")))
    }
}

/// `acosh(−⟨e_i, e_j⟩)` for ultraparallel faces.
pub fn face_distance(rp: &RealizedPolyhedron, i: usize, j: usize) -> Result<f64> {
    if i == j || rp.poly.adjacent(i, j) {
        return Err(Error::Domain(format!("faces {i} and {j} are not ultraparallel")));
    }
    let g = -mdot(&rp.normals[i], &rp.normals[j]);
    if g <= 1.0 {
        return Err(Error::Domain(format!("faces {i} and {j} meet (Gram entry {})", -g)));
    }
    Ok(g.acosh())
}

/// Length of the edge between two adjacent faces.
pub fn edge_length(rp: &RealizedPolyhedron, f: usize, g: usize) -> Result<f64> {
    let (a, b) = rp.edge_endpoints(f, g)?;
    if !(mdot(&a, &a) < 0.0 && mdot(&b, &b) < 0.0) {
        return Err(Error::Domain("edge endpoint is not timelike".into()));
    }
    Ok(point_distance(&a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::polyhedron::prism_combinatorics;

    #[test]
    fn prism_18_realizes() {
        let rp = realize_polyhedron(&prism_combinatorics(18).unwrap()).unwrap();
        let r = check_realization(&rp).unwrap();
        assert!(r.residual < 1e-12, "{r:?}");
        let ap = &rp.poly;
        let fb = ap.boundary_face;
        let mu = ap
            .faces_disjoint_from_boundary()
            .iter()
            .map(|&g| face_distance(&rp, fb, g).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!((mu - 0.069503).abs() < 1e-5, "mu = {mu}");
        let l = 2.0 * edge_length(&rp, ap.bold_edge.0, ap.bold_edge.1).unwrap();
        assert!((l - 2.3619).abs() < 1e-3, "L = {l}");
    }

    #[test]
    fn deterministic() {
        let ap = prism_combinatorics(9).unwrap();
        let a = realize_polyhedron(&ap).unwrap();
        let b = realize_polyhedron(&ap).unwrap();
        assert_eq!(a.normals, b.normals);
    }
}
