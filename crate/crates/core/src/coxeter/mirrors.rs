//! Mirror pattern on the boundary of the handlebody H_0, recovered from the prism by the
//! action of `D_3 × D_k`. Pentagonal mirrors are the lifts of `F_P`, octagonal mirrors
//! the lifts of `F_Σ`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use super::racg::{Racg, RacgJson};
use crate::error::{Error, Result};

/// Bundled pattern for k = 4.
pub const H0_PATTERN_K4: &str = include_str!("../../data/h0_mirrors_k4.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MirrorKind {
    Pentagon,
    Octagon,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorPattern {
    pub k: usize,
    pub generators: usize,
    pub commuting_pairs: Vec<[usize; 2]>,
    pub mirrors: Vec<MirrorKind>,
}

impl MirrorPattern {
    pub fn racg(&self) -> Result<Racg> {
        Racg::from_json(&RacgJson {
            generators: self.generators,
            commuting_pairs: self.commuting_pairs.clone(),
        })
    }
}

/// Element `r^i s^f` of the dihedral group of order `2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Dihedral {
    i: usize,
    f: bool,
}

impl Dihedral {
    fn mul(self, o: Dihedral, n: usize) -> Dihedral {
        let j = if self.f { (n - o.i) % n } else { o.i };
        Dihedral {
            i: (self.i + j) % n,
            f: self.f ^ o.f,
        }
    }

    /// The two standard reflections, whose product has order `n`.
    fn reflection(which: usize) -> Dihedral {
        Dihedral { i: which, f: true }
    }

    fn all(n: usize) -> impl Iterator<Item = Dihedral> {
        (0..n).flat_map(|i| [false, true].map(|f| Dihedral { i, f }))
    }
}

type G = (Dihedral, Dihedral);

fn gmul(a: G, b: G, k: usize) -> G {
    (a.0.mul(b.0, 3), a.1.mul(b.1, k))
}

const E: Dihedral = Dihedral { i: 0, f: false };

/// Builds the pattern. Faces of the prism acted on by `G = ⟨r1, r2⟩ × ⟨s1, s2⟩`:
/// `F_P` is perpendicular to `r2` and meets `s2` at π/4; `F_Σ` is perpendicular to `r1`
/// and `s2` and meets `r2` at π/4; `F_P` and `F_Σ` meet at a right angle.
pub fn h0_mirror_pattern(k: usize) -> Result<MirrorPattern> {
    if k < 3 {
        return Err(Error::Parameter(format!("mirror pattern needs k >= 3, got {k}")));
    }
    let r1: G = (Dihedral::reflection(0), E);
    let r2: G = (Dihedral::reflection(1), E);
    let s2: G = (E, Dihedral::reflection(1));
    let elements: Vec<G> = Dihedral::all(3)
        .flat_map(|a| Dihedral::all(k).map(move |b| (a, b)))
        .collect();
    let coset = |x: G, stab: &[G]| -> Vec<G> {
        let mut c: Vec<G> = stab.iter().map(|&h| gmul(x, h, k)).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    let p_stab = [(E, E), r2];
    let o_stab = [(E, E), r1, s2, gmul(r1, s2, k)];
    let mut pentagons: Vec<Vec<G>> = elements.iter().map(|&x| coset(x, &p_stab)).collect();
    let mut octagons: Vec<Vec<G>> = elements.iter().map(|&x| coset(x, &o_stab)).collect();
    for list in [&mut pentagons, &mut octagons] {
        list.sort_unstable();
        list.dedup();
    }
    let p_index = |x: G| pentagons.binary_search(&coset(x, &p_stab)).expect("coset listed");
    let o_index = |x: G| pentagons.len() + octagons.binary_search(&coset(x, &o_stab)).expect("coset listed");
    let mut pairs = BTreeSet::new();
    let mut add = |a: usize, b: usize| {
        if a != b {
            pairs.insert([a.min(b), a.max(b)]);
        }
    };
    for &x in &elements {
        add(p_index(x), o_index(x));
        add(p_index(x), p_index(gmul(x, s2, k)));
        add(o_index(x), o_index(gmul(x, r2, k)));
    }
    let mut mirrors = vec![MirrorKind::Pentagon; pentagons.len()];
    mirrors.resize(pentagons.len() + octagons.len(), MirrorKind::Octagon);
    Ok(MirrorPattern {
        k,
        generators: mirrors.len(),
        commuting_pairs: pairs.into_iter().collect(),
        mirrors,
    })
}

pub fn bundled_h0_pattern() -> Result<MirrorPattern> {
    Ok(serde_json::from_str(H0_PATTERN_K4)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for k in [3, 4, 7] {
            let m = h0_mirror_pattern(k).unwrap();
            let pent = m.mirrors.iter().filter(|&&x| x == MirrorKind::Pentagon).count();
            assert_eq!((pent, m.generators - pent), (6 * k, 3 * k));
        }
    }

    #[test]
    fn neighbor_counts_match_polygon_sides() {
        let m = h0_mirror_pattern(5).unwrap();
        let mut deg = vec![0; m.generators];
        for [a, b] in &m.commuting_pairs {
            deg[*a] += 1;
            deg[*b] += 1;
        }
        for (i, kind) in m.mirrors.iter().enumerate() {
            match kind {
                // two octagon sides, two sides on the same neighboring pentagon
                MirrorKind::Pentagon => assert_eq!(deg[i], 3, "pentagon {i}"),
                // four pentagon sides; the other four sides pair up on two octagons
                MirrorKind::Octagon => assert_eq!(deg[i], 6, "octagon {i}"),
            }
        }
    }

    #[test]
    #[ignore = "rewrites the bundled data file"]
    fn regenerate_bundled_file() {
        let m = h0_mirror_pattern(4).unwrap();
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/h0_mirrors_k4.json");
        std::fs::write(path, serde_json::to_string_pretty(&m).unwrap() + "\n").unwrap();
    }

    #[test]
    fn bundled_file_matches_generator() {
        let bundled = bundled_h0_pattern().unwrap();
        assert_eq!(bundled, h0_mirror_pattern(4).unwrap());
        let w = bundled.racg().unwrap();
        assert_eq!(w.generators(), 36);
    }
}
