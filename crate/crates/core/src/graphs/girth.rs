use rayon::prelude::*;
use std::collections::VecDeque;

use super::multigraph::Multigraph;

/// Length of a shortest cycle, `None` for forests. Loops have length 1 and
/// parallel edges give 2.
pub fn girth(g: &Multigraph) -> Option<usize> {
    let inc = g.incidences();
    (0..g.vertex_count())
        .into_par_iter()
        .filter_map(|r| shortest_cycle_through(&inc, r))
        .min()
}

/// Shortest closed non-backtracking walk found by BFS from `root`; exact for roots on a
/// shortest cycle and never below the girth.
fn shortest_cycle_through(inc: &[Vec<(usize, usize)>], root: usize) -> Option<usize> {
    let n = inc.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    dist[root] = 0;
    let mut best = usize::MAX;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        if 2 * dist[x] >= best {
            break;
        }
        for &(e, y) in &inc[x] {
            if e == parent_edge[x] {
                continue;
            }
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                parent_edge[y] = e;
                queue.push_back(y);
            } else {
                best = best.min(dist[x] + dist[y] + 1);
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::theta_graph;

    #[test]
    fn small_cases() {
        assert_eq!(girth(&theta_graph(2).unwrap()), Some(2));
        assert_eq!(girth(&theta_graph(7).unwrap()), Some(2));
        assert_eq!(girth(&Multigraph::cycle(10)), Some(10));
        assert_eq!(girth(&Multigraph::from_pairs(1, &[(0, 0)]).unwrap()), Some(1));
        let path = Multigraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(girth(&path), None);
    }

    #[test]
    fn petersen_has_girth_five() {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((i + 5, (i + 2) % 5 + 5));
        }
        assert_eq!(girth(&Multigraph::from_pairs(10, &pairs).unwrap()), Some(5));
    }
}
