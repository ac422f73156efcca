use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graphs::{adjacency_eigs, girth, Multigraph};

/// Largest graph (vertices + edges) accepted by [`graphs_isomorphic`].
pub const ISO_CELL_GUARD: usize = 5000;
const SEARCH_NODE_BUDGET: usize = 200_000;
const SPECTRUM_VERTEX_LIMIT: usize = 800;

struct Adj {
    nbrs: Vec<Vec<(usize, usize)>>,
    loops: Vec<usize>,
}

impl Adj {
    fn new(g: &Multigraph) -> Self {
        let n = g.vertex_count();
        let mut counts: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
        let mut loops = vec![0; n];
        for e in g.edges() {
            if e.u == e.v {
                loops[e.u] += 1;
            } else {
                *counts[e.u].entry(e.v).or_default() += 1;
                *counts[e.v].entry(e.u).or_default() += 1;
            }
        }
        Adj {
            nbrs: counts.into_iter().map(|m| m.into_iter().collect()).collect(),
            loops,
        }
    }
}

type Colors = [Vec<usize>; 2];

/// Joint color refinement of both graphs. Returns the class count, or `None` when the
/// class sizes of the two graphs disagree.
type Signature = (usize, usize, Vec<(usize, usize)>);

fn refine(adj: [&Adj; 2], colors: &mut Colors) -> Option<usize> {
    let mut classes = 0;
    loop {
        let sigs: [Vec<Signature>; 2] = [0, 1].map(|s| {
            (0..colors[s].len())
                .map(|x| {
                    let mut nb: Vec<(usize, usize)> = adj[s].nbrs[x]
                        .iter()
                        .map(|&(y, m)| (colors[s][y], m))
                        .collect();
                    nb.sort_unstable();
                    (colors[s][x], adj[s].loops[x], nb)
                })
                .collect()
        });
        let mut ids = BTreeMap::new();
        for sig in sigs.iter().flatten() {
            ids.entry(sig).or_insert(0usize);
        }
        for (i, v) in ids.values_mut().enumerate() {
            *v = i;
        }
        let mut hist = [vec![0usize; ids.len()], vec![0usize; ids.len()]];
        for s in 0..2 {
            for (x, sig) in sigs[s].iter().enumerate() {
                let c = ids[sig];
                colors[s][x] = c;
                hist[s][c] += 1;
            }
        }
        if hist[0] != hist[1] {
            return None;
        }
        if ids.len() == classes {
            return Some(classes);
        }
        classes = ids.len();
    }
}

fn search(adj: [&Adj; 2], mut colors: Colors, a: &Multigraph, b: &Multigraph, budget: &mut usize) -> Result<Option<Vec<usize>>> {
    if *budget == 0 {
        return Err(Error::TooLarge {
            what: "isomorphism search nodes".into(),
            size: SEARCH_NODE_BUDGET,
            limit: SEARCH_NODE_BUDGET,
        });
    }
    *budget -= 1;
    let Some(classes) = refine(adj, &mut colors) else {
        return Ok(None);
    };
    let mut size = vec![0usize; classes];
    for &c in &colors[0] {
        size[c] += 1;
    }
    let target = (0..classes).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c));
    let Some(c) = target else {
        let mut by_color = vec![0; classes];
        for (y, &cy) in colors[1].iter().enumerate() {
            by_color[cy] = y;
        }
        let map: Vec<usize> = colors[0].iter().map(|&cx| by_color[cx]).collect();
        return Ok(is_isomorphism(a, b, &map).then_some(map));
    };
    let x = colors[0].iter().position(|&cx| cx == c).expect("class is nonempty");
    for y in (0..colors[1].len()).filter(|&y| colors[1][y] == c) {
        let mut next = colors.clone();
        next[0][x] = classes;
        next[1][y] = classes;
        if let Some(map) = search(adj, next, a, b, budget)? {
            return Ok(Some(map));
        }
    }
    Ok(None)
}

/// True iff `map` is a vertex bijection carrying the edge multiset of `a` onto that of `b`.
pub fn is_isomorphism(a: &Multigraph, b: &Multigraph, map: &[usize]) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() || map.len() != a.vertex_count() {
        return false;
    }
    let mut hit = vec![false; b.vertex_count()];
    for &y in map {
        if y >= hit.len() || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    let mut ea: Vec<_> = a.edges().iter().map(|e| key(map[e.u], map[e.v])).collect();
    let mut eb: Vec<_> = b.edges().iter().map(|e| key(e.u, e.v)).collect();
    ea.sort_unstable();
    eb.sort_unstable();
    ea == eb
}

fn spectra_agree(a: &Multigraph, b: &Multigraph) -> bool {
    if a.vertex_count() > SPECTRUM_VERTEX_LIMIT {
        return true;
    }
    adjacency_eigs(a)
        .iter()
        .zip(adjacency_eigs(b))
        .all(|(x, y)| (x - y).abs() < 1e-6)
}

/// Exact multigraph isomorphism by individualization and refinement, after an invariant
/// prescreen (counts, degree multiset, girth, adjacency spectrum). Returns a vertex map
/// `a -> b` when isomorphic.
pub fn graphs_isomorphic(a: &Multigraph, b: &Multigraph) -> Result<Option<Vec<usize>>> {
    for g in [a, b] {
        let cells = g.vertex_count() + g.edge_count();
        if cells > ISO_CELL_GUARD {
            return Err(Error::TooLarge {
                what: "graph for isomorphism testing".into(),
                size: cells,
                limit: ISO_CELL_GUARD,
            });
        }
    }
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let (mut da, mut db) = (a.degrees(), b.degrees());
    da.sort_unstable();
    db.sort_unstable();
    if da != db || girth(a) != girth(b) || !spectra_agree(a, b) {
        return Ok(None);
    }
    let (aa, ab) = (Adj::new(a), Adj::new(b));
    let colors = [vec![0; a.vertex_count()], vec![0; b.vertex_count()]];
    let mut budget = SEARCH_NODE_BUDGET;
    search([&aa, &ab], colors, a, b, &mut budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{lps_voltages, voltage_cover, Edge};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn relabel(g: &Multigraph, perm: &[usize]) -> Multigraph {
        let mut edges: Vec<Edge> = g
            .edges()
            .iter()
            .map(|e| Edge {
                u: perm[e.u],
                v: perm[e.v],
                label: None,
            })
            .collect();
        edges.reverse();
        Multigraph::new(g.vertex_count(), edges).unwrap()
    }

    #[test]
    fn small_graphs() {
        let c4 = Multigraph::cycle(4);
        assert!(graphs_isomorphic(&c4, &c4).unwrap().is_some());
        let star = Multigraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(graphs_isomorphic(&c4, &star).unwrap().is_none());
        let two_triangles =
            Multigraph::from_pairs(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(graphs_isomorphic(&Multigraph::cycle(6), &two_triangles).unwrap().is_none());
    }

    #[test]
    fn relabeled_lps_cover() {
        let (g, _) = voltage_cover(&lps_voltages(13, 5).unwrap());
        assert_eq!(g.vertex_count(), 120);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2 {
            let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
            perm.shuffle(&mut rng);
            let h = relabel(&g, &perm);
            let map = graphs_isomorphic(&g, &h).unwrap().expect("isomorphic");
            assert!(is_isomorphism(&g, &h, &map));
        }
    }

    #[test]
    fn guard() {
        let big = Multigraph::cycle(3000);
        assert!(matches!(graphs_isomorphic(&big, &big), Err(Error::TooLarge { .. })));
    }
}
