use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::lorentz::{boost_to_origin2, reflection_matrix2, PlaneVec};
use super::plane::{polygon_angles, polygon_area, FacePolygon, Segment2};
use super::polyhedron::AngledPolyhedron;
use crate::error::{Error, Result};

/// Which sides of the boundary face are used when unfolding it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnfoldSchedule {
    /// The two faces through the pivot corner; copies are reflected across them alternately.
    pub pivot: (usize, usize),
    /// The face along the mirror side (the bold edge).
    pub mirror: usize,
}

pub fn unfold_schedule(ap: &AngledPolyhedron) -> Result<UnfoldSchedule> {
    let pivot = ap
        .unfold
        .ok_or_else(|| Error::Structural("polyhedron has no unfolding schedule".into()))?;
    let (a, b) = ap.bold_edge;
    let mirror = if a == ap.boundary_face { b } else { a };
    Ok(UnfoldSchedule { pivot, mirror })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideKind {
    Interior,
    Mirror,
}

/// The right-angled 3k-gon assembled from copies of the boundary face.
#[derive(Debug, Clone, PartialEq)]
pub struct Developed3kGon {
    pub k: usize,
    pub corners: Vec<PlaneVec>,
    /// Kind of the side from corner `i` to corner `i + 1`.
    pub side_kinds: Vec<SideKind>,
    pub interior: Vec<Segment2>,
    pub mirror: Vec<Segment2>,
    pub copies: usize,
    pub tile_area: f64,
    pub area: f64,
    pub corner_angles: Vec<f64>,
}

fn apply(m: &Matrix3<f64>, v: &PlaneVec) -> PlaneVec {
    m * v
}

/// Unfolds `2k` copies of the quadrilateral boundary face around its pivot corner.
/// Per period the boundary reads: one interior side, then two mirror sides.
pub fn develop_3kgon(fb: &FacePolygon, k: usize, schedule: &UnfoldSchedule) -> Result<Developed3kGon> {
    if fb.len() != 4 {
        return Err(Error::Development(format!("boundary face has {} sides, expected 4", fb.len())));
    }
    let (u1, u2) = schedule.pivot;
    let side_of = |f: usize| {
        fb.sides
            .iter()
            .position(|&s| s == f)
            .ok_or_else(|| Error::Development(format!("face {f} is not a side of the boundary face")))
    };
    let (i1, i2) = (side_of(u1)?, side_of(u2)?);
    // Sides i and i+1 meet at vertex i+1.
    let pivot = if (i1 + 1) % 4 == i2 {
        (i1 + 1) % 4
    } else if (i2 + 1) % 4 == i1 {
        (i2 + 1) % 4
    } else {
        return Err(Error::Development("pivot sides are not adjacent".into()));
    };
    // Work with the pivot at the origin so the reflections stay well conditioned.
    let centre = boost_to_origin2(&fb.vertices[pivot]);
    let v = |j: usize| centre * fb.vertices[(pivot + j) % 4];
    // Going around from the pivot P: the corner across the u1 side is A, across u2 is G.
    let forward_side = fb.sides[pivot];
    let (a, e, g) = if forward_side == u1 { (v(1), v(2), v(3)) } else { (v(3), v(2), v(1)) };
    let mirror_ok = fb.side((pivot + 2) % 4).length() > 0.0
        && [fb.sides[(pivot + 1) % 4], fb.sides[(pivot + 2) % 4]].contains(&schedule.mirror);
    if !mirror_ok {
        return Err(Error::Development("mirror face is not opposite the pivot".into()));
    }
    let r1 = reflection_matrix2(&Segment2::new(v(0), a).normal());
    let r2 = reflection_matrix2(&Segment2::new(v(0), g).normal());
    let copies = 2 * k;
    let mut maps = vec![Matrix3::identity()];
    for j in 1..=copies {
        let step = if j % 2 == 1 { &r1 } else { &r2 };
        maps.push(maps[j - 1] * step);
    }
    let closure = (maps[copies] - Matrix3::identity()).amax();
    if closure > 1e-8 {
        return Err(Error::Development(format!(
            "{copies} copies do not close up around the pivot (defect {closure:e})"
        )));
    }
    let mut corners = Vec::with_capacity(3 * k);
    let mut side_kinds = Vec::with_capacity(3 * k);
    let mut interior = Vec::with_capacity(k);
    let mut mirror = Vec::with_capacity(2 * k);
    for i in 0..k {
        let (m0, m1) = (&maps[2 * i], &maps[2 * i + 1]);
        let (e0, e1, g1) = (apply(m0, &e), apply(m1, &e), apply(m1, &g));
        let e2 = apply(&maps[(2 * i + 2) % copies], &e);
        corners.extend([e0, e1, g1]);
        side_kinds.extend([SideKind::Interior, SideKind::Mirror, SideKind::Mirror]);
        interior.push(Segment2::new(e0, e1));
        mirror.push(Segment2::new(e1, g1));
        mirror.push(Segment2::new(g1, e2));
    }
    let corner_angles = polygon_angles(&corners);
    let worst = corner_angles
        .iter()
        .map(|x| (x - PI / 2.0).abs())
        .fold(0.0, f64::max);
    if worst > 1e-8 {
        return Err(Error::Development(format!("corner angle defect {worst:e} from π/2")));
    }
    let tile_area = fb.area();
    let area = polygon_area(&corners);
    let expected = (3.0 * k as f64 - 4.0) * PI / 2.0;
    if (area - expected).abs() > 1e-8 || (area - copies as f64 * tile_area).abs() > 1e-8 {
        return Err(Error::Development(format!(
            "area {area} vs (3k−4)π/2 = {expected} and {copies}·{tile_area}"
        )));
    }
    Ok(Developed3kGon {
        k,
        corners,
        side_kinds,
        interior,
        mirror,
        copies,
        tile_area,
        area,
        corner_angles,
    })
}

impl Developed3kGon {
    /// Full mirrors (pairs of collinear mirror sides from adjacent 3k-gons) meeting the
    /// 3k-gon and its reflections across each interior side.
    pub fn neighborhood_mirrors(&self) -> (Vec<Segment2>, usize) {
        let ilines: Vec<Matrix3<f64>> =
            self.interior.iter().map(|s| reflection_matrix2(&s.normal())).collect();
        // Mirror sides 2i and 2i+1 start and end at the interior side i ends.
        let own: Vec<Segment2> = (0..self.k)
            .flat_map(|i| {
                let before = &self.mirror[(2 * i + 2 * self.k - 1) % (2 * self.k)];
                let after = &self.mirror[2 * i];
                let r = &ilines[i];
                [
                    Segment2::new(before.a, apply(r, &before.a)),
                    Segment2::new(after.b, apply(r, &after.b)),
                ]
            })
            .collect();
        let mut all = own.clone();
        for r in &ilines {
            for m in &own {
                let img = Segment2::new(apply(r, &m.a), apply(r, &m.b));
                if !all.iter().any(|x| x.same_as(&img, 1e-9)) {
                    all.push(img);
                }
            }
        }
        (all, own.len())
    }
}
