#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use coneoff_core::coxeter::Racg;
use coneoff_core::graphs::{Edge, Multigraph};

/// All labeled commutation graphs on `p` generators.
pub fn all_labeled_racgs(p: usize) -> Vec<Racg> {
    let pairs: Vec<(usize, usize)> = (0..p).flat_map(|i| (i + 1..p).map(move |j| (i, j))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let chosen: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
            Racg::new(p, &chosen).unwrap()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One commutation graph per isomorphism class on `p` generators.
pub fn racg_classes(p: usize) -> Vec<Racg> {
    let perms = permutations(p);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in all_labeled_racgs(p) {
        let canon = perms
            .iter()
            .map(|perm| {
                let mut e: Vec<(usize, usize)> = w
                    .commuting_pairs()
                    .iter()
                    .map(|&(i, j)| (perm[i].min(perm[j]), perm[i].max(perm[j])))
                    .collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(w);
        }
    }
    out
}

/// Brute-force confluent rewriting: closes a word under swaps of adjacent commuting
/// letters and deletion of adjacent equal letters, then takes the shortlex-least word.
pub struct RewriteOracle<'a> {
    w: &'a Racg,
    memo: HashMap<Vec<usize>, Vec<usize>>,
}

impl<'a> RewriteOracle<'a> {
    pub fn new(w: &'a Racg) -> Self {
        Self { w, memo: HashMap::new() }
    }

    pub fn closure_min(&self, word: &[usize]) -> Vec<usize> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(word.to_vec());
        queue.push_back(word.to_vec());
        let mut best = word.to_vec();
        while let Some(u) = queue.pop_front() {
            if (u.len(), &u) < (best.len(), &best) {
                best = u.clone();
            }
            for i in 0..u.len().saturating_sub(1) {
                let (a, b) = (u[i], u[i + 1]);
                let next = if a == b {
                    let mut v = u.clone();
                    v.drain(i..i + 2);
                    v
                } else if self.w.commutes(a, b) {
                    let mut v = u.clone();
                    v.swap(i, i + 1);
                    v
                } else {
                    continue;
                };
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        best
    }

    /// Canonical word of `prefix_canon · s`, memoized.
    pub fn extend(&mut self, prefix_canon: &[usize], s: usize) -> Vec<usize> {
        let mut key = prefix_canon.to_vec();
        key.push(s);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = self.closure_min(&key);
        self.memo.insert(key, v.clone());
        v
    }
}

/// Girth by enumerating simple cycles (closed trails without repeated vertices).
pub fn girth_by_cycles(g: &Multigraph) -> Option<usize> {
    let n = g.vertex_count();
    let edges = g.edges();
    let mut best: Option<usize> = None;
    for (id, e) in edges.iter().enumerate() {
        if e.u == e.v {
            return Some(1);
        }
        for (id2, f) in edges.iter().enumerate() {
            if id2 > id && ((f.u, f.v) == (e.u, e.v) || (f.u, f.v) == (e.v, e.u)) {
                best = Some(best.map_or(2, |b: usize| b.min(2)));
            }
        }
    }
    // Longer cycles: DFS for simple paths from each start that return to it.
    fn dfs(
        g: &Multigraph,
        start: usize,
        v: usize,
        len: usize,
        used: &mut Vec<bool>,
        best: &mut Option<usize>,
    ) {
        for e in g.edges() {
            let w = if e.u == v {
                e.v
            } else if e.v == v {
                e.u
            } else {
                continue;
            };
            if w == start && len >= 2 {
                *best = Some(best.map_or(len + 1, |b| b.min(len + 1)));
            } else if w > start && !used[w] && best.is_none_or(|b| len + 2 < b) {
                used[w] = true;
                dfs(g, start, w, len + 1, used, best);
                used[w] = false;
            }
        }
    }
    for s in 0..n {
        let mut used = vec![false; n];
        used[s] = true;
        dfs(g, s, s, 0, &mut used, &mut best);
    }
    best
}

pub fn graph(n: usize, pairs: &[(usize, usize)]) -> Multigraph {
    Multigraph::new(n, pairs.iter().map(|&(u, v)| Edge { u, v, label: None }).collect()).unwrap()
}
