//! The hyperboloid model: `ℝ^{3,1}` with `⟨u,v⟩ = u₁v₁ + u₂v₂ + u₃v₃ − u₄v₄`, and the
//! signature-(2,1) model of the hyperbolic plane used for face geometry.

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};
use rand::Rng;

pub type LorentzVec = Vector4<f64>;
pub type PlaneVec = Vector3<f64>;

pub fn mdot(u: &LorentzVec, v: &LorentzVec) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2] - u[3] * v[3]
}

/// `J·v`, so that `⟨u, v⟩ = u · (J v)`.
pub fn lower(v: &LorentzVec) -> LorentzVec {
    Vector4::new(v[0], v[1], v[2], -v[3])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Causal {
    Spacelike,
    Timelike,
    Lightlike,
}

pub fn classify(v: &LorentzVec, tol: f64) -> Causal {
    let q = mdot(v, v);
    if q > tol {
        Causal::Spacelike
    } else if q < -tol {
        Causal::Timelike
    } else {
        Causal::Lightlike
    }
}

/// Reflection in the plane with unit spacelike normal `n`.
pub fn reflect(x: &LorentzVec, n: &LorentzVec) -> LorentzVec {
    x - n * (2.0 * mdot(x, n))
}

/// Scales a timelike vector onto the upper sheet.
pub fn to_hyperboloid(v: &LorentzVec) -> Option<LorentzVec> {
    let q = mdot(v, v);
    if !(q < 0.0) {
        return None;
    }
    let w = v / (-q).sqrt();
    Some(if w[3] < 0.0 { -w } else { w })
}

pub fn point_distance(p: &LorentzVec, q: &LorentzVec) -> f64 {
    (-mdot(p, q)).max(1.0).acosh()
}

/// Vector orthogonal to three given ones (generalized cross product in the Lorentz form).
pub fn lorentz_cross(a: &LorentzVec, b: &LorentzVec, c: &LorentzVec) -> LorentzVec {
    let (la, lb, lc) = (lower(a), lower(b), lower(c));
    let m = |cols: [usize; 3]| {
        Matrix3::from_fn(|r, s| [la, lb, lc][r][cols[s]]).determinant()
    };
    Vector4::new(
        m([1, 2, 3]),
        -m([0, 2, 3]),
        m([0, 1, 3]),
        -m([0, 1, 2]),
    )
}

/// A random orthochronous Lorentz transformation: a rotation followed by a boost.
pub fn random_lorentz<R: Rng>(rng: &mut R, max_rapidity: f64) -> Matrix4<f64> {
    let axis = Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let rot = nalgebra::Rotation3::from_scaled_axis(axis * 3.0);
    let mut r = Matrix4::identity();
    r.fixed_view_mut::<3, 3>(0, 0).copy_from(rot.matrix());
    let dir = Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let n = if dir.norm() < 1e-6 { Vector3::x() } else { dir.normalize() };
    let phi = rng.gen_range(0.0..max_rapidity);
    let (ch, sh) = (phi.cosh(), phi.sinh());
    let mut boost = Matrix4::identity();
    for i in 0..3 {
        for j in 0..3 {
            boost[(i, j)] += (ch - 1.0) * n[i] * n[j];
        }
        boost[(i, 3)] = sh * n[i];
        boost[(3, i)] = sh * n[i];
    }
    boost[(3, 3)] = ch;
    boost * r
}

pub fn mdot2(u: &PlaneVec, v: &PlaneVec) -> f64 {
    u[0] * v[0] + u[1] * v[1] - u[2] * v[2]
}

/// Unit normal of the line through two points of the hyperbolic plane.
pub fn line_normal(p: &PlaneVec, q: &PlaneVec) -> PlaneVec {
    let c = p.cross(q);
    let n = Vector3::new(c[0], c[1], -c[2]);
    n / mdot2(&n, &n).sqrt()
}

pub fn reflect2(x: &PlaneVec, n: &PlaneVec) -> PlaneVec {
    x - n * (2.0 * mdot2(x, n))
}

pub fn reflection_matrix2(n: &PlaneVec) -> Matrix3<f64> {
    let j = Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0));
    Matrix3::identity() - n * (j * n).transpose() * 2.0
}

/// The boost of the plane model taking `p` to the origin `(0, 0, 1)`.
pub fn boost_to_origin2(p: &PlaneVec) -> Matrix3<f64> {
    let (x, y, z) = (p[0], p[1], p[2]);
    let r2 = x * x + y * y;
    if r2 < 1e-300 {
        return Matrix3::identity();
    }
    let f = (z - 1.0) / r2;
    Matrix3::new(
        1.0 + f * x * x, f * x * y, -x,
        f * x * y, 1.0 + f * y * y, -y,
        -x, -y, z,
    )
}

pub fn point_distance2(p: &PlaneVec, q: &PlaneVec) -> f64 {
    (-mdot2(p, q)).max(1.0).acosh()
}

/// Interior angle at `x` between the geodesics towards `y` and `z`.
pub fn corner_angle2(x: &PlaneVec, y: &PlaneVec, z: &PlaneVec) -> f64 {
    let tangent = |p: &PlaneVec| {
        let t = p + x * mdot2(x, p);
        t / mdot2(&t, &t).sqrt()
    };
    let (u, w) = (tangent(y), tangent(z));
    mdot2(&u, &w).clamp(-1.0, 1.0).acos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basics() {
        let t = Vector4::new(0.0, 0.0, 0.0, 1.0);
        let x = Vector4::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(mdot(&t, &t), -1.0);
        assert_eq!(mdot(&x, &x), 1.0);
        assert_eq!(classify(&t, 1e-12), Causal::Timelike);
        assert_eq!(classify(&Vector4::new(1.0, 0.0, 0.0, 1.0), 1e-12), Causal::Lightlike);
    }

    #[test]
    fn random_lorentz_preserves_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m = random_lorentz(&mut rng, 2.0);
            let u = Vector4::new(0.3, -1.0, 2.0, 0.5);
            let v = Vector4::new(1.1, 0.2, -0.7, 3.0);
            assert!((mdot(&(m * u), &(m * v)) - mdot(&u, &v)).abs() < 1e-10);
            assert!((m * Vector4::new(0.0, 0.0, 0.0, 1.0))[3] > 0.0);
        }
    }

    #[test]
    fn cross_is_orthogonal() {
        let a = Vector4::new(1.0, 0.2, 0.1, 0.3);
        let b = Vector4::new(0.0, 1.0, 0.5, 0.2);
        let c = Vector4::new(0.3, 0.1, 1.0, -0.4);
        let n = lorentz_cross(&a, &b, &c);
        for v in [a, b, c] {
            assert!(mdot(&n, &v).abs() < 1e-12);
        }
    }
}

#[cfg(test)]
mod plane_tests {
    use super::*;

    #[test]
    fn boost_moves_point_to_origin() {
        let p = PlaneVec::new(0.7, -1.3, (1.0f64 + 0.49 + 1.69).sqrt());
        let b = boost_to_origin2(&p);
        assert!((b * p - PlaneVec::new(0.0, 0.0, 1.0)).amax() < 1e-12);
        let q = PlaneVec::new(0.2, 0.1, (1.05f64).sqrt());
        assert!((mdot2(&(b * p), &(b * q)) - mdot2(&p, &q)).abs() < 1e-12);
    }
}
