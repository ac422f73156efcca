use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::develop::{develop_3kgon, unfold_schedule, Developed3kGon};
use super::lorentz::{mdot, point_distance, to_hyperboloid, LorentzVec};
use super::plane::{face_polygon, segment_distance_h2};
use super::polyhedron::prism_combinatorics;
use super::realize::{edge_length, face_distance, realize_polyhedron_with, RealizedPolyhedron, SolverOptions};
use crate::error::{Error, Result};

/// C, L, μ and D together with how each was obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrismConstants {
    #[serde(rename = "C")]
    pub c_interior: f64,
    #[serde(rename = "L")]
    pub l_mirror: f64,
    pub mu: f64,
    #[serde(rename = "D")]
    pub d_mirror: f64,
    pub audit: ConstantsAudit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsAudit {
    /// Face realizing μ.
    pub mu_face: String,
    /// `"plane"` when both common-perpendicular feet lie in the faces, else `"sampled"`.
    pub mu_method: String,
    pub c_consecutive: f64,
    pub d_search: String,
    pub d_mirrors_considered: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometricConstants {
    #[serde(rename = "C")]
    pub c_interior: f64,
    #[serde(rename = "L")]
    pub l_mirror: f64,
    pub mu: f64,
    #[serde(rename = "D")]
    pub d_mirror: f64,
    pub b: f64,
    pub c: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub girth_target: usize,
    #[serde(rename = "A_threshold")]
    pub a_threshold: f64,
}

pub const DEFAULT_B_FRACTION: f64 = 0.9;
pub const DEFAULT_R_MARGIN: f64 = 1.01;

fn inside(rp: &RealizedPolyhedron, x: &LorentzVec) -> bool {
    rp.normals.iter().all(|e| mdot(x, e) <= 1e-9)
}

/// Foot on plane `a` of the common perpendicular to the ultraparallel planes `a`, `b`.
fn perpendicular_foot(a: &LorentzVec, b: &LorentzVec) -> Option<LorentzVec> {
    to_hyperboloid(&(b - a * mdot(a, b)))
}

fn face_points(rp: &RealizedPolyhedron, f: usize) -> Vec<LorentzVec> {
    rp.vertices.iter().filter(|v| v.faces.contains(&f)).map(|v| v.point).collect()
}

/// Point of a convex face from fan coordinates `(triangle, s, t)`.
fn fan_point(vs: &[LorentzVec], tri: usize, s: f64, t: f64) -> Option<LorentzVec> {
    let (s, t) = (s.clamp(0.0, 1.0), t.clamp(0.0, 1.0));
    let (s, t) = if s + t > 1.0 { (1.0 - t, 1.0 - s) } else { (s, t) };
    to_hyperboloid(&(vs[0] * (1.0 - s - t) + vs[tri + 1] * s + vs[tri + 2] * t))
}

/// Face-to-face distance by dense sampling followed by a shrinking pattern search.
pub fn sampled_face_distance(rp: &RealizedPolyhedron, f: usize, g: usize) -> f64 {
    // Face vertices in cyclic order, via the 2D polygon.
    let ordered = |face: usize| -> Vec<LorentzVec> {
        match face_polygon(rp, face) {
            Ok(p) => p.vertex_faces.iter().map(|t| *rp.vertex(*t).unwrap()).collect(),
            Err(_) => face_points(rp, face),
        }
    };
    let (vf, vg) = (ordered(f), ordered(g));
    const N: usize = 24;
    let grid = |vs: &[LorentzVec]| -> Vec<(usize, f64, f64, LorentzVec)> {
        let mut out = Vec::new();
        for tri in 0..vs.len() - 2 {
            for i in 0..=N {
                for j in 0..=N - i {
                    let (s, t) = (i as f64 / N as f64, j as f64 / N as f64);
                    if let Some(p) = fan_point(vs, tri, s, t) {
                        out.push((tri, s, t, p));
                    }
                }
            }
        }
        out
    };
    let (gf, gg) = (grid(&vf), grid(&vg));
    let mut best = (f64::INFINITY, 0, 0);
    for (i, p) in gf.iter().enumerate() {
        for (j, q) in gg.iter().enumerate() {
            let d = point_distance(&p.3, &q.3);
            if d < best.0 {
                best = (d, i, j);
            }
        }
    }
    let (mut d, bi, bj) = best;
    let mut x = [gf[bi].1, gf[bi].2, gg[bj].1, gg[bj].2];
    let (tf, tg) = (gf[bi].0, gg[bj].0);
    let eval = |x: &[f64; 4]| match (fan_point(&vf, tf, x[0], x[1]), fan_point(&vg, tg, x[2], x[3])) {
        (Some(p), Some(q)) => point_distance(&p, &q),
        _ => f64::INFINITY,
    };
    let mut step = 1.0 / N as f64;
    while step > 1e-10 {
        let mut improved = false;
        for c in 0..4 {
            for sgn in [-1.0, 1.0] {
                let mut y = x;
                y[c] += sgn * step;
                let dy = eval(&y);
                if dy < d {
                    d = dy;
                    x = y;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    d
}

/// Distance between two non-adjacent faces of the polyhedron, with the method used.
pub fn face_to_face_distance(rp: &RealizedPolyhedron, f: usize, g: usize) -> Result<(f64, &'static str)> {
    let plane = face_distance(rp, f, g)?;
    let (a, b) = (&rp.normals[f], &rp.normals[g]);
    match (perpendicular_foot(a, b), perpendicular_foot(b, a)) {
        (Some(x), Some(y)) if inside(rp, &x) && inside(rp, &y) => Ok((plane, "plane")),
        _ => Ok((sampled_face_distance(rp, f, g), "sampled")),
    }
}

/// C, L, μ and D from a realized prism and its developed 3k-gon.
pub fn compute_constants(rp: &RealizedPolyhedron, dev: &Developed3kGon) -> Result<PrismConstants> {
    let ap = &rp.poly;
    let fb = ap.boundary_face;
    let mut mu = (f64::INFINITY, String::new(), "");
    for g in ap.faces_disjoint_from_boundary() {
        let (d, method) = face_to_face_distance(rp, fb, g)?;
        if d < mu.0 {
            mu = (d, ap.faces[g].id.clone(), method);
        }
    }
    if mu.1.is_empty() {
        return Err(Error::Domain("no face is disjoint from the boundary face".into()));
    }
    let l_mirror = 2.0 * edge_length(rp, ap.bold_edge.0, ap.bold_edge.1)?;
    let k = dev.interior.len();
    let mut c_all = f64::INFINITY;
    let mut c_consecutive = f64::INFINITY;
    for i in 0..k {
        for j in i + 1..k {
            let d = segment_distance_h2(&dev.interior[i], &dev.interior[j])?;
            c_all = c_all.min(d);
            if j == i + 1 || (i == 0 && j == k - 1) {
                c_consecutive = c_consecutive.min(d);
            }
        }
    }
    let (mirrors, own) = dev.neighborhood_mirrors();
    let mut d_mirror = f64::INFINITY;
    for m in &mirrors[..own] {
        for n in &mirrors {
            if m.same_as(n, 1e-9) || m.shares_endpoint(n, 1e-9) {
                continue;
            }
            d_mirror = d_mirror.min(segment_distance_h2(m, n)?);
        }
    }
    let pc = PrismConstants {
        c_interior: c_all,
        l_mirror,
        mu: mu.0,
        d_mirror,
        audit: ConstantsAudit {
            mu_face: mu.1,
            mu_method: mu.2.into(),
            c_consecutive,
            d_search: "two-tile neighborhood".into(),
            d_mirrors_considered: mirrors.len(),
        },
    };
    if !(pc.c_interior > 0.0 && pc.l_mirror > 0.0 && pc.mu > 0.0 && pc.d_mirror > 0.0 && pc.d_mirror.is_finite()) {
        return Err(Error::Internal(format!("non-positive constant: {pc:?}")));
    }
    Ok(pc)
}

/// Completes the constants: `b = fraction·μ`, `R = margin·2π/sinh b`, `c` the midpoint of
/// `(π/sinh b, R/2)`, girth target `max(6, ⌈(R+L)/C⌉)` and `A = 3R/D + 3`.
pub fn choose_b_r(pc: &PrismConstants, b_fraction: f64, r_margin: f64) -> Result<GeometricConstants> {
    if !(b_fraction > 0.0 && b_fraction < 1.0) {
        return Err(Error::Parameter(format!("b-fraction {b_fraction} not in (0, 1)")));
    }
    if !(r_margin > 1.0) || !r_margin.is_finite() {
        return Err(Error::Parameter(format!("R-margin {r_margin} must exceed 1")));
    }
    let b = b_fraction * pc.mu;
    let r = r_margin * 2.0 * PI / b.sinh();
    let lo = PI / b.sinh();
    let c = 0.5 * (lo + r / 2.0);
    let girth_target = (((r + pc.l_mirror) / pc.c_interior).ceil() as usize).max(6);
    let gc = GeometricConstants {
        c_interior: pc.c_interior,
        l_mirror: pc.l_mirror,
        mu: pc.mu,
        d_mirror: pc.d_mirror,
        b,
        c,
        r,
        girth_target,
        a_threshold: 3.0 * r / pc.d_mirror + 3.0,
    };
    check_constants(&gc).map_err(Error::Internal)?;
    Ok(gc)
}

/// The strict invariants relating the constants; returns the first violation.
pub fn check_constants(gc: &GeometricConstants) -> std::result::Result<(), String> {
    let sb = gc.b.sinh();
    let checks = [
        (gc.b > 0.0 && gc.b < gc.mu, "0 < b < μ"),
        (gc.r > 2.0 * PI / sb, "R > 2π/sinh b"),
        (gc.c > PI / sb && gc.c < gc.r / 2.0, "π/sinh b < c < R/2"),
        (
            gc.girth_target >= 6 && gc.girth_target as f64 >= ((gc.r + gc.l_mirror) / gc.c_interior).ceil(),
            "girth target ≥ max(6, ⌈(R+L)/C⌉)",
        ),
        (
            [gc.c_interior, gc.l_mirror, gc.mu, gc.d_mirror, gc.a_threshold].iter().all(|&x| x > 0.0),
            "positivity",
        ),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, what)) => Err(format!("constant invariant violated: {what}")),
        None => Ok(()),
    }
}

/// Distance from `F_Σ` to `F_B` and whether it exceeds `b`.
pub fn sigma_margin(rp: &RealizedPolyhedron, gc: &GeometricConstants) -> Result<(f64, bool)> {
    let ap = &rp.poly;
    let (d, _) = face_to_face_distance(rp, ap.sigma_face, ap.boundary_face)?;
    Ok((d, d > gc.b))
}

/// Everything geometric for a given `k`: realization, development and constants.
#[derive(Debug, Clone)]
pub struct PrismGeometry {
    pub realized: RealizedPolyhedron,
    pub developed: Developed3kGon,
    pub constants: PrismConstants,
}

pub fn prism_geometry(k: usize, opts: &SolverOptions) -> Result<PrismGeometry> {
    let label = u32::try_from(k).map_err(|_| Error::Parameter(format!("k = {k} too large")))?;
    let realized = realize_polyhedron_with(&prism_combinatorics(label)?, opts)?;
    let fb = face_polygon(&realized, realized.poly.boundary_face)?;
    let developed = develop_3kgon(&fb, k, &unfold_schedule(&realized.poly)?)?;
    let constants = compute_constants(&realized, &developed)?;
    Ok(PrismGeometry {
        realized,
        developed,
        constants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k18_constants() {
        let g = prism_geometry(18, &SolverOptions::default()).unwrap();
        let pc = &g.constants;
        assert!((pc.c_interior - 1.4133).abs() < 1e-4);
        assert!((pc.l_mirror - 2.3619).abs() < 1e-4);
        assert!((pc.mu - 0.069503).abs() < 1e-6);
        assert_eq!(pc.audit.mu_method, "plane");
        assert!((pc.c_interior - pc.audit.c_consecutive).abs() < 1e-12);
        for m in &g.developed.mirror {
            assert!((m.length() - pc.l_mirror / 2.0).abs() < 1e-9);
        }
        let gc = choose_b_r(pc, DEFAULT_B_FRACTION, DEFAULT_R_MARGIN).unwrap();
        assert!((gc.b - 0.0625527).abs() < 1e-6);
        assert!((gc.r - 101.4).abs() < 0.1);
        assert_eq!(gc.girth_target, 74);
        let (d, ok) = sigma_margin(&g.realized, &gc).unwrap();
        assert!(ok && d >= pc.mu);
    }

    #[test]
    fn sampled_agrees_with_plane_distance() {
        let g = prism_geometry(18, &SolverOptions::default()).unwrap();
        let rp = &g.realized;
        let fb = rp.poly.boundary_face;
        for f in rp.poly.faces_disjoint_from_boundary() {
            let plane = face_distance(rp, fb, f).unwrap();
            let sampled = sampled_face_distance(rp, fb, f);
            assert!((plane - sampled).abs() < 1e-6, "{plane} vs {sampled}");
        }
    }
}
