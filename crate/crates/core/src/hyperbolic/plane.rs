use nalgebra::Vector4;
use std::f64::consts::PI;

use super::lorentz::{
    corner_angle2, line_normal, mdot, mdot2, point_distance2, to_hyperboloid, LorentzVec, PlaneVec,
};
use super::realize::RealizedPolyhedron;
use crate::error::{Error, Result};

/// Geodesic segment in the hyperbolic plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment2 {
    pub a: PlaneVec,
    pub b: PlaneVec,
}

impl Segment2 {
    pub fn new(a: PlaneVec, b: PlaneVec) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        point_distance2(&self.a, &self.b)
    }

    pub fn normal(&self) -> PlaneVec {
        line_normal(&self.a, &self.b)
    }

    /// Unit tangent at `a` pointing towards `b`.
    fn tangent(&self) -> PlaneVec {
        let t = self.b + self.a * mdot2(&self.a, &self.b);
        t / mdot2(&t, &t).sqrt()
    }

    /// Whether a point of the supporting line lies on the segment.
    fn contains_on_line(&self, p: &PlaneVec) -> bool {
        let t = mdot2(p, &self.tangent()).asinh();
        (-1e-12..=self.length() + 1e-12).contains(&t)
    }

    pub fn shares_endpoint(&self, o: &Segment2, tol: f64) -> bool {
        [self.a, self.b]
            .iter()
            .any(|p| [o.a, o.b].iter().any(|q| (p - q).amax() < tol))
    }

    pub fn same_as(&self, o: &Segment2, tol: f64) -> bool {
        let close = |p: &PlaneVec, q: &PlaneVec| (p - q).amax() < tol;
        (close(&self.a, &o.a) && close(&self.b, &o.b)) || (close(&self.a, &o.b) && close(&self.b, &o.a))
    }
}

fn point_segment_distance(p: &PlaneVec, s: &Segment2) -> f64 {
    let n = s.normal();
    let h = mdot2(p, &n);
    let foot = (p - n * h) / (1.0 + h * h).sqrt();
    if s.contains_on_line(&foot) {
        h.abs().asinh()
    } else {
        point_distance2(p, &s.a).min(point_distance2(p, &s.b))
    }
}

fn hyperboloid2(v: PlaneVec) -> Option<PlaneVec> {
    let q = mdot2(&v, &v);
    if !(q < 0.0) {
        return None;
    }
    let w = v / (-q).sqrt();
    Some(if w[2] < 0.0 { -w } else { w })
}

/// Exact distance between two geodesic segments.
pub fn segment_distance_h2(s: &Segment2, t: &Segment2) -> Result<f64> {
    if s.length() < 1e-14 || t.length() < 1e-14 {
        return Err(Error::Degenerate("zero-length segment".into()));
    }
    let (n1, n2) = (s.normal(), t.normal());
    let side = |p: &PlaneVec, n: &PlaneVec| mdot2(p, n);
    let straddles = |x: f64, y: f64| x * y <= 0.0;
    if straddles(side(&t.a, &n1), side(&t.b, &n1)) && straddles(side(&s.a, &n2), side(&s.b, &n2)) {
        return Ok(0.0);
    }
    let mut best = point_segment_distance(&s.a, t)
        .min(point_segment_distance(&s.b, t))
        .min(point_segment_distance(&t.a, s))
        .min(point_segment_distance(&t.b, s));
    let g = mdot2(&n1, &n2);
    if g.abs() > 1.0 {
        if let (Some(f1), Some(f2)) = (hyperboloid2(n2 - n1 * g), hyperboloid2(n1 - n2 * g)) {
            if s.contains_on_line(&f1) && t.contains_on_line(&f2) {
                best = best.min(g.abs().acosh());
            }
        }
    }
    Ok(best)
}

/// A face of a realized polyhedron drawn in the signature-(2,1) model of its plane.
#[derive(Debug, Clone, PartialEq)]
pub struct FacePolygon {
    pub face: usize,
    pub vertices: Vec<PlaneVec>,
    /// Polyhedron vertex (face triple) behind each polygon vertex.
    pub vertex_faces: Vec<[usize; 3]>,
    /// `sides[i]` is the neighboring face along the side from vertex `i` to `i + 1`.
    pub sides: Vec<usize>,
}

impl FacePolygon {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn corner_angles(&self) -> Vec<f64> {
        polygon_angles(&self.vertices)
    }

    /// Area by the angle defect.
    pub fn area(&self) -> f64 {
        polygon_area(&self.vertices)
    }

    pub fn side(&self, i: usize) -> Segment2 {
        Segment2::new(self.vertices[i], self.vertices[(i + 1) % self.len()])
    }
}

pub fn polygon_angles(vs: &[PlaneVec]) -> Vec<f64> {
    let n = vs.len();
    (0..n)
        .map(|i| corner_angle2(&vs[i], &vs[(i + n - 1) % n], &vs[(i + 1) % n]))
        .collect()
}

/// `(n − 2)π − Σ angles` for a convex polygon.
pub fn polygon_area(vs: &[PlaneVec]) -> f64 {
    (vs.len() as f64 - 2.0) * PI - polygon_angles(vs).iter().sum::<f64>()
}

/// Area as a sum over a fan of triangles from the first vertex.
pub fn fan_area(vs: &[PlaneVec]) -> f64 {
    (1..vs.len() - 1)
        .map(|i| polygon_area(&[vs[0], vs[i], vs[i + 1]]))
        .sum()
}

/// An orthonormal frame `(f1, f2, w)` of the plane `⟨x, e⟩ = 0`, `w` future timelike.
fn plane_frame(e: &LorentzVec) -> Result<[LorentzVec; 3]> {
    if !(mdot(e, e) > 1e-12) {
        return Err(Error::Domain("face normal is not spacelike".into()));
    }
    let e = e / mdot(e, e).sqrt();
    let t0 = Vector4::new(0.0, 0.0, 0.0, 1.0);
    let w = to_hyperboloid(&(t0 - e * mdot(&t0, &e)))
        .ok_or_else(|| Error::Domain("plane frame: no timelike direction".into()))?;
    let project = |x: LorentzVec, basis: &[LorentzVec]| {
        let mut y = x - e * mdot(&x, &e) + w * mdot(&x, &w);
        for b in basis {
            y -= b * mdot(&y, b);
        }
        y
    };
    let mut basis: Vec<LorentzVec> = Vec::new();
    for _ in 0..2 {
        let best = (0..3)
            .map(|c| project(Vector4::from_fn(|r, _| if r == c { 1.0 } else { 0.0 }), &basis))
            .max_by(|a, b| mdot(a, a).total_cmp(&mdot(b, b)))
            .unwrap();
        let q = mdot(&best, &best);
        if !(q > 1e-12) {
            return Err(Error::Domain("plane frame construction failed".into()));
        }
        basis.push(best / q.sqrt());
    }
    Ok([basis[0], basis[1], w])
}

/// The face's vertices in an orthonormal frame of its plane, in cyclic order.
pub fn face_polygon(rp: &RealizedPolyhedron, face: usize) -> Result<FacePolygon> {
    let ap = &rp.poly;
    let nbrs = ap.neighbors(face);
    if nbrs.len() < 3 {
        return Err(Error::Domain(format!("face {face} has fewer than 3 vertices")));
    }
    let corners: Vec<[usize; 3]> = rp
        .vertices
        .iter()
        .map(|v| v.faces)
        .filter(|t| t.contains(&face))
        .collect();
    let others = |t: &[usize; 3]| -> [usize; 2] {
        let o: Vec<usize> = t.iter().copied().filter(|&x| x != face).collect();
        [o[0], o[1]]
    };
    // Walk the cycle of neighboring faces.
    let mut cycle = vec![nbrs[0]];
    while cycle.len() < nbrs.len() {
        let cur = *cycle.last().unwrap();
        let next = corners
            .iter()
            .map(others)
            .filter_map(|[a, b]| if a == cur { Some(b) } else if b == cur { Some(a) } else { None })
            .find(|x| !cycle.contains(x))
            .ok_or_else(|| Error::Structural(format!("neighbors of face {face} do not form a cycle")))?;
        cycle.push(next);
    }
    let m = cycle.len();
    let [f1, f2, w] = plane_frame(&rp.normals[face])?;
    let mut vertices = Vec::with_capacity(m);
    let mut vertex_faces = Vec::with_capacity(m);
    let mut sides = Vec::with_capacity(m);
    for i in 0..m {
        let mut t = [face, cycle[i], cycle[(i + 1) % m]];
        t.sort_unstable();
        let p = rp
            .vertex(t)
            .ok_or_else(|| Error::Structural(format!("missing vertex {t:?}")))?;
        vertices.push(PlaneVec::new(mdot(p, &f1), mdot(p, &f2), -mdot(p, &w)));
        vertex_faces.push(t);
        sides.push(cycle[(i + 1) % m]);
    }
    Ok(FacePolygon {
        face,
        vertices,
        vertex_faces,
        sides,
    })
}

/// The corner angle of `face` at the vertex shared with `a` and `b`, from dihedral data.
pub fn face_angle_from_dihedrals(rp: &RealizedPolyhedron, face: usize, a: usize, b: usize) -> Option<f64> {
    let ap = &rp.poly;
    let (alpha, beta, gamma) = (ap.angle(a, b)?, ap.angle(face, a)?, ap.angle(face, b)?);
    let c = (alpha.cos() + beta.cos() * gamma.cos()) / (beta.sin() * gamma.sin());
    Some(c.clamp(-1.0, 1.0).acos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{prism_combinatorics, realize_polyhedron};

    fn pt(x: f64, y: f64) -> PlaneVec {
        PlaneVec::new(x, y, (1.0 + x * x + y * y).sqrt())
    }

    #[test]
    fn crossing_segments() {
        let s = Segment2::new(pt(-1.0, 0.0), pt(1.0, 0.0));
        let t = Segment2::new(pt(0.0, -1.0), pt(0.0, 1.0));
        assert_eq!(segment_distance_h2(&s, &t).unwrap(), 0.0);
    }

    #[test]
    fn ultraparallel_lines() {
        // Two lines perpendicular to the x-axis at distance d apart.
        let d: f64 = 0.9;
        let line = |x0: f64| {
            let c = PlaneVec::new(x0.sinh(), 0.0, x0.cosh());
            let u = PlaneVec::new(0.0, 1.0, 0.0);
            let at = |t: f64| c * t.cosh() + u * t.sinh();
            Segment2::new(at(-5.0), at(5.0))
        };
        let (s, t) = (line(0.0), line(d));
        let g = mdot2(&s.normal(), &t.normal());
        assert!((g.abs() - d.cosh()).abs() < 1e-9);
        assert!((segment_distance_h2(&s, &t).unwrap() - d).abs() < 1e-9);
    }

    #[test]
    fn quad_faces() {
        let rp = realize_polyhedron(&prism_combinatorics(18).unwrap()).unwrap();
        for f in 0..7 {
            let poly = face_polygon(&rp, f).unwrap();
            let angles = poly.corner_angles();
            for (i, t) in poly.vertex_faces.iter().enumerate() {
                let o: Vec<usize> = t.iter().copied().filter(|&x| x != f).collect();
                let want = face_angle_from_dihedrals(&rp, f, o[0], o[1]).unwrap();
                assert!((angles[i] - want).abs() < 1e-9);
            }
            assert!((poly.area() - fan_area(&poly.vertices)).abs() < 1e-9);
        }
    }
}
