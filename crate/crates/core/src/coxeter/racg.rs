use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Multigraph;

/// A word in the generators, as 0-based generator indices.
pub type CoxWord = Vec<usize>;

/// Right-angled Coxeter group: involutions `t_0..t_{p-1}`, with `t_i t_j = t_j t_i`
/// exactly for the edges of the commutation graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Racg {
    p: usize,
    commute: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RacgJson {
    pub generators: usize,
    pub commuting_pairs: Vec<[usize; 2]>,
}

impl Racg {
    pub fn new(p: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut commute = vec![vec![false; p]; p];
        for &(i, j) in pairs {
            if i >= p || j >= p {
                return Err(Error::Structural(format!("pair ({i}, {j}) out of range")));
            }
            if i == j {
                return Err(Error::Structural(format!("self-loop at generator {i}")));
            }
            if commute[i][j] {
                return Err(Error::Structural(format!("pair ({i}, {j}) listed twice")));
            }
            commute[i][j] = true;
            commute[j][i] = true;
        }
        Ok(Self { p, commute })
    }

    pub fn generators(&self) -> usize {
        self.p
    }

    pub fn commutes(&self, i: usize, j: usize) -> bool {
        self.commute[i][j]
    }

    pub fn commuting_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.p {
            for j in i + 1..self.p {
                if self.commute[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> RacgJson {
        RacgJson {
            generators: self.p,
            commuting_pairs: self.commuting_pairs().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn from_json(j: &RacgJson) -> Result<Self> {
        let pairs: Vec<_> = j.commuting_pairs.iter().map(|&[a, b]| (a, b)).collect();
        Self::new(j.generators, &pairs)
    }

    pub fn check_word(&self, w: &[usize]) -> Result<()> {
        match w.iter().find(|&&t| t >= self.p) {
            Some(t) => Err(Error::Structural(format!("generator {t} out of range"))),
            None => Ok(()),
        }
    }
}

/// RACG whose commutation graph is the given simple graph.
pub fn racg_from_mirrors(adjacency: &Multigraph) -> Result<Racg> {
    let pairs: Vec<_> = adjacency.edges().iter().map(|e| (e.u, e.v)).collect();
    Racg::new(adjacency.vertex_count(), &pairs).map_err(|e| match e {
        Error::Structural(m) => Error::Structural(format!("mirror adjacency is not simple: {m}")),
        other => other,
    })
}

/// Positions `(i, j)` of a pattern `t ω t` where every letter of `ω = w[i+1..j]`
/// commutes with `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub first: usize,
    pub second: usize,
    pub omega: CoxWord,
}

fn find_pair(w: &Racg, word: &[usize]) -> Option<(usize, usize)> {
    for i in 0..word.len() {
        let t = word[i];
        for (j, &s) in word.iter().enumerate().skip(i + 1) {
            if s == t {
                return Some((i, j));
            }
            if !w.commutes(s, t) {
                break;
            }
        }
    }
    None
}

pub fn unreduced_witness(w: &Racg, word: &[usize]) -> Option<Witness> {
    find_pair(w, word).map(|(i, j)| Witness {
        first: i,
        second: j,
        omega: word[i + 1..j].to_vec(),
    })
}

/// Geodesic representative: deletes `t ω t` pairs until none remain.
pub fn reduce(w: &Racg, word: &[usize]) -> CoxWord {
    let mut word = word.to_vec();
    while let Some((i, j)) = find_pair(w, &word) {
        word.remove(j);
        word.remove(i);
    }
    word
}

/// Lexicographically least word among the commutation-equivalents of `reduce(word)`.
pub fn normal_form(w: &Racg, word: &[usize]) -> CoxWord {
    let mut rest = reduce(w, word);
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // the least letter whose first occurrence commutes with everything before it
        let mut best: Option<(usize, usize)> = None;
        for (i, &t) in rest.iter().enumerate() {
            if best.is_some_and(|(_, b)| b <= t) {
                continue;
            }
            if rest[..i].iter().all(|&s| s != t && w.commutes(s, t)) {
                best = Some((i, t));
            }
        }
        let (i, t) = best.expect("the first letter is always movable");
        rest.remove(i);
        out.push(t);
    }
    out
}

/// Whether `nf + [t]` is again a normal form, given that `nf` is one.
pub fn extends_normal_form(w: &Racg, nf: &[usize], t: usize) -> bool {
    for &s in nf.iter().rev() {
        if s == t {
            return false;
        }
        if !w.commutes(s, t) {
            return true;
        }
        if s > t {
            return false;
        }
    }
    true
}

/// Concatenates simultaneous crossings, each set flattened in index order.
pub fn coxeter_word_of_path(w: &Racg, crossings: &[Vec<usize>]) -> Result<CoxWord> {
    let mut out = Vec::new();
    for set in crossings {
        w.check_word(set)?;
        let mut s = set.clone();
        s.sort_unstable();
        for (a, &x) in s.iter().enumerate() {
            for &y in &s[a + 1..] {
                if x == y || !w.commutes(x, y) {
                    return Err(Error::InvalidCrossing(x, y));
                }
            }
        }
        out.extend(s);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundRule {
    /// `t ω t` present: the path is at least `sysLB − L` long.
    Unreduced,
    /// Reduced with `|w| ≥ 3`: at least `⌊|w|/3⌋·D`.
    ReducedLength,
    Inapplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaBound {
    pub bound: f64,
    pub rule: BoundRule,
}

/// Lower bound on the length of a path with Coxeter word `word`.
pub fn lemma_bounds(w: &Racg, word: &[usize], d: f64, sys_lb: f64, l: f64) -> Result<LemmaBound> {
    if !(d > 0.0 && sys_lb > 0.0 && l > 0.0) {
        return Err(Error::Parameter("D, sysLB and L must be positive".into()));
    }
    w.check_word(word)?;
    Ok(if unreduced_witness(w, word).is_some() {
        LemmaBound {
            bound: sys_lb - l,
            rule: BoundRule::Unreduced,
        }
    } else if word.len() >= 3 {
        LemmaBound {
            bound: (word.len() / 3) as f64 * d,
            rule: BoundRule::ReducedLength,
        }
    } else {
        LemmaBound {
            bound: 0.0,
            rule: BoundRule::Inapplicable,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // a = 0, b = 1, c = 2 with a ⊥ c
    fn abc() -> Racg {
        Racg::new(3, &[(0, 2)]).unwrap()
    }

    #[test]
    fn basic_reductions() {
        let w = abc();
        assert_eq!(reduce(&w, &[1, 1]), Vec::<usize>::new());
        assert_eq!(reduce(&w, &[0, 2, 0]), vec![2]);
        assert_eq!(unreduced_witness(&w, &[0, 1, 0]), None);
        assert_eq!(
            unreduced_witness(&w, &[0, 2, 0]),
            Some(Witness {
                first: 0,
                second: 2,
                omega: vec![2]
            })
        );
        assert_eq!(normal_form(&w, &[2, 0]), vec![0, 2]);
        assert_eq!(normal_form(&w, &[]), Vec::<usize>::new());
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(Racg::new(2, &[(0, 0)]).is_err());
        assert!(Racg::new(2, &[(0, 1), (1, 0)]).is_err());
        let multi = Multigraph::from_pairs(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(racg_from_mirrors(&multi).is_err());
        let pentagon = Multigraph::cycle(5);
        assert_eq!(racg_from_mirrors(&pentagon).unwrap().commuting_pairs().len(), 5);
    }

    #[test]
    fn crossings() {
        let w = Racg::new(3, &[(1, 2)]).unwrap();
        let word = coxeter_word_of_path(&w, &[vec![0], vec![2, 1]]).unwrap();
        assert_eq!(word, vec![0, 1, 2]);
        assert_eq!(normal_form(&w, &word), normal_form(&w, &[0, 2, 1]));
        assert_eq!(coxeter_word_of_path(&w, &[]).unwrap(), Vec::<usize>::new());
        assert!(matches!(
            coxeter_word_of_path(&w, &[vec![0, 1]]),
            Err(Error::InvalidCrossing(0, 1))
        ));
    }

    #[test]
    fn bounds() {
        let free = Racg::new(3, &[]).unwrap();
        let b = lemma_bounds(&free, &[0, 1, 2, 0, 1, 2, 0, 1, 2], 1.0, 95.0, 2.3619).unwrap();
        assert_eq!((b.bound, b.rule), (3.0, BoundRule::ReducedLength));
        let w = abc();
        let b = lemma_bounds(&w, &[0, 2, 0], 1.0, 95.0, 2.3619).unwrap();
        assert_eq!(b.rule, BoundRule::Unreduced);
        assert!((b.bound - 92.6381).abs() < 1e-12);
        let b = lemma_bounds(&free, &[0, 1], 1.0, 95.0, 2.3619).unwrap();
        assert_eq!((b.bound, b.rule), (0.0, BoundRule::Inapplicable));
        assert!(lemma_bounds(&free, &[0], 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let w = abc();
        let j = serde_json::to_string(&w.to_json()).unwrap();
        assert_eq!(j, r#"{"generators":3,"commuting_pairs":[[0,2]]}"#);
        assert_eq!(Racg::from_json(&serde_json::from_str(&j).unwrap()).unwrap(), w);
    }
}
