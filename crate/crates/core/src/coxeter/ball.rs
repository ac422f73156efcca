use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::racg::{extends_normal_form, CoxWord, Racg};
use super::tits::{generator_matrix, tits_matrix};
use crate::error::{Error, Result};

pub const BALL_GUARD: usize = 1_000_000;

/// Normal forms of all elements of length `≤ n`, ordered by length then lexicographically.
pub fn ball(w: &Racg, n: usize) -> Result<Vec<CoxWord>> {
    let mut out: Vec<CoxWord> = vec![Vec::new()];
    let mut frontier = 0;
    for _ in 0..n {
        let end = out.len();
        for i in frontier..end {
            for t in 0..w.generators() {
                if extends_normal_form(w, &out[i], t) {
                    if out.len() >= BALL_GUARD {
                        return Err(Error::TooLarge {
                            what: "ball".into(),
                            size: out.len() + 1,
                            limit: BALL_GUARD,
                        });
                    }
                    let mut next = out[i].clone();
                    next.push(t);
                    out.push(next);
                }
            }
        }
        frontier = end;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationEntry {
    pub word: CoxWord,
    /// gcd of the entries of `M − I`: the element survives mod `m` iff `m` does not divide it.
    pub defect_gcd: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatingRecord {
    pub modulus: u64,
    pub radius: usize,
    pub entries: Vec<SeparationEntry>,
    /// Torsion-freeness of the congruence kernel is not checked.
    pub torsion_free_verified: bool,
}

/// Smallest `m ≥ 2` such that no nontrivial element of the ball of radius `n` has Tits
/// matrix congruent to the identity mod `m`.
pub fn separating_modulus(w: &Racg, n: usize) -> Result<SeparatingRecord> {
    let elements = ball(w, n)?;
    let mut entries = Vec::with_capacity(elements.len().saturating_sub(1));
    let mut gcds: Vec<BigInt> = Vec::with_capacity(entries.capacity());
    for word in elements.into_iter().skip(1) {
        let g = tits_matrix(w, &word).identity_defect_gcd();
        if g.is_zero() {
            return Err(Error::Internal(format!(
                "nontrivial element {word:?} has identity Tits matrix"
            )));
        }
        entries.push(SeparationEntry {
            word,
            defect_gcd: g.to_string(),
        });
        gcds.push(g);
    }
    let mut m = 2u64;
    while gcds.iter().any(|g| (g % m).is_zero()) {
        m += 1;
    }
    Ok(SeparatingRecord {
        modulus: m,
        radius: n,
        entries,
        torsion_free_verified: false,
    })
}

/// Independent recheck: multiplies generator matrices mod `m` with machine integers.
pub fn verify_separating(w: &Racg, record: &SeparatingRecord) -> bool {
    let m = record.modulus;
    let p = w.generators();
    let gens: Vec<Vec<u64>> = (0..p).map(|t| generator_matrix(w, t).reduce_mod(m)).collect();
    let mut id = vec![0u64; p * p];
    for i in 0..p {
        id[i * p + i] = 1 % m;
    }
    record.entries.iter().all(|e| {
        let mut acc = id.clone();
        for &t in &e.word {
            let g = &gens[t];
            let mut next = vec![0u64; p * p];
            for i in 0..p {
                for k in 0..p {
                    let a = acc[i * p + k];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..p {
                        next[i * p + j] = (next[i * p + j] + a * g[k * p + j]) % m;
                    }
                }
            }
            acc = next;
        }
        !e.word.is_empty() && acc != id
    }) && ball(w, record.radius).is_ok_and(|b| b.len() == record.entries.len() + 1)
}

/// Ball size for the full-scale threshold `3R/D + 3`, or the guard failure.
pub fn ball_size_or_guard(w: &Racg, threshold: f64) -> Result<usize> {
    let n = threshold.floor().to_usize().unwrap_or(usize::MAX);
    ball(w, n).map(|b| b.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_dihedral_ball() {
        let w = Racg::new(2, &[]).unwrap();
        let b = ball(&w, 3).unwrap();
        let want: Vec<CoxWord> = vec![
            vec![],
            vec![0],
            vec![1],
            vec![0, 1],
            vec![1, 0],
            vec![0, 1, 0],
            vec![1, 0, 1],
        ];
        assert_eq!(b, want);
        assert_eq!(ball(&w, 0).unwrap(), vec![Vec::<usize>::new()]);
        let w5 = Racg::new(5, &[(0, 1)]).unwrap();
        assert_eq!(ball(&w5, 1).unwrap().len(), 6);
    }

    #[test]
    fn infinite_dihedral_modulus() {
        let w = Racg::new(2, &[]).unwrap();
        let r = separating_modulus(&w, 3).unwrap();
        assert!(r.modulus <= 5);
        assert_eq!(r.modulus, 3);
        assert_eq!(r.entries.len(), 6);
        assert!(verify_separating(&w, &r));
        let zero = separating_modulus(&w, 0).unwrap();
        assert_eq!(zero.modulus, 2);
        assert!(zero.entries.is_empty());
    }

    #[test]
    fn tampered_record_fails_recheck() {
        let w = Racg::new(2, &[]).unwrap();
        let mut r = separating_modulus(&w, 3).unwrap();
        r.modulus = 2;
        assert!(!verify_separating(&w, &r));
    }

    #[test]
    fn guard_trips_on_large_balls() {
        let w = Racg::new(5, &[]).unwrap();
        assert!(matches!(ball_size_or_guard(&w, 131.8), Err(Error::TooLarge { .. })));
    }
}
