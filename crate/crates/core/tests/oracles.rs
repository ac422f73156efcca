#![allow(clippy::needless_range_loop)]

mod common;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coneoff_core::arith::{gcd, inv_mod, is_prime, is_quadratic_residue, pow_mod, prime_power, sqrt_neg_one};
use coneoff_core::coxeter::{bilinear, normal_form, reduce, tits_matrix, Racg};
use coneoff_core::graphs::{girth, lps_voltages, quaternion_solutions, voltage_cover, Edge, Multigraph};
use coneoff_core::pipeline::required_level;

use common::{girth_by_cycles, RewriteOracle};

fn trial_division(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[test]
fn primality_matches_trial_division() {
    for n in 0..5000 {
        assert_eq!(is_prime(n), trial_division(n), "n = {n}");
    }
}

#[test]
fn modular_helpers_match_brute_force() {
    for m in 1..60u64 {
        for a in 0..60u64 {
            for e in 0..12u64 {
                let slow = (0..e).fold(1 % m, |acc, _| acc * (a % m) % m);
                assert_eq!(pow_mod(a, e, m), slow);
            }
            let brute = (0..m).find(|&x| a * x % m == 1 % m);
            assert_eq!(inv_mod(a, m), if gcd(a, m) == 1 { brute } else { None }, "{a}^-1 mod {m}");
        }
    }
}

#[test]
fn quadratic_residues_match_squares() {
    for q in (3..200).filter(|&q| trial_division(q)) {
        let squares: Vec<u64> = (1..q).map(|x| x * x % q).collect();
        for a in 1..q {
            assert_eq!(is_quadratic_residue(a, q), squares.contains(&a), "{a} mod {q}");
        }
    }
}

#[test]
fn prime_powers_and_roots_of_minus_one() {
    for m in 0..3000u64 {
        let brute = (2..=m).find(|d| m % d == 0).and_then(|q| {
            let mut r = m;
            let mut n = 0;
            while r % q == 0 {
                r /= q;
                n += 1;
            }
            (r == 1).then_some((q, n))
        });
        assert_eq!(prime_power(m), brute);
    }
    for q in [5u64, 13, 17, 29, 37] {
        for n in 1..4 {
            let m = q.pow(n);
            let r = sqrt_neg_one(q, n).unwrap();
            assert_eq!((r as u128 * r as u128 + 1) % m as u128, 0);
        }
    }
    assert_eq!(sqrt_neg_one(7, 1), None);
}

#[test]
fn jacobi_count_of_quaternions() {
    for p in (5..200u64).filter(|&p| trial_division(p) && p % 4 == 1) {
        let sols = quaternion_solutions(p);
        assert_eq!(sols.len() as u64, p + 1, "p = {p}");
        assert!(sols.iter().all(|s| s.iter().map(|x| x * x).sum::<i64>() == p as i64));
    }
}

#[test]
fn lps_17_5_counts() {
    // 17 is not a square mod 5, so the graph is the bipartite Cayley graph of PGL(2, 5).
    let va = lps_voltages(17, 5).unwrap();
    let (g, _) = voltage_cover(&va);
    assert_eq!(g.vertex_count(), 120);
    assert_eq!(g.edge_count(), 120 * 18 / 2);
    assert!(g.degrees().iter().all(|&d| d == 18));
    assert!(g.bipartition().is_some());

    // girth from the adjacency matrix: simple, triangle-free, with a 4-cycle
    let a = g.adjacency();
    let n = a.len();
    assert!(a.iter().enumerate().all(|(i, r)| r[i] == 0.0 && r.iter().all(|&x| x <= 1.0)));
    let common = |u: usize, w: usize| (0..n).filter(|&x| a[u][x] > 0.0 && a[w][x] > 0.0).count();
    let has_square = (0..n).any(|u| (u + 1..n).any(|w| common(u, w) >= 2));
    assert!(has_square);
    assert_eq!(girth(&g), Some(4));
}

#[test]
fn girth_matches_cycle_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..400 {
        let n = rng.gen_range(1..9);
        let m = rng.gen_range(0..13);
        let edges: Vec<Edge> = (0..m)
            .map(|_| Edge {
                u: rng.gen_range(0..n),
                v: rng.gen_range(0..n),
                label: None,
            })
            .collect();
        let g = Multigraph::new(n, edges).unwrap();
        assert_eq!(girth(&g), girth_by_cycles(&g), "{:?}", g.edges());
    }
}

#[test]
fn girth_of_named_graphs() {
    assert_eq!(girth(&Multigraph::cycle(7)), Some(7));
    // Petersen graph
    let mut pairs: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    pairs.extend((0..5).map(|i| (i, i + 5)));
    pairs.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    let petersen = common::graph(10, &pairs);
    assert_eq!(girth(&petersen), Some(5));
    assert_eq!(girth_by_cycles(&petersen), Some(5));
    assert_eq!(girth(&common::graph(4, &[(0, 1), (1, 2)])), None);
}

#[test]
fn required_level_matches_linear_search() {
    for p in [5u64, 13, 17, 29] {
        for q in [3u64, 5, 7, 13] {
            for target in [1usize, 6, 20, 74, 150] {
                let lp = |x: f64| x.ln() / (p as f64).ln();
                let brute = (1..).find(|&n| 4.0 * n as f64 * lp(q as f64) - lp(4.0) >= target as f64).unwrap();
                assert_eq!(required_level(p, q, target), brute, "p={p} q={q} target={target}");
            }
        }
    }
    assert_eq!(required_level(17, 5, 74), 33);
}

#[test]
fn tits_matrices_match_explicit_products() {
    let w = Racg::new(4, &[(0, 1), (2, 3)]).unwrap();
    let p = w.generators();
    let gen = |s: usize| -> Vec<Vec<i64>> {
        // column j holds the image of e_j
        let mut m = vec![vec![0i64; p]; p];
        for j in 0..p {
            m[j][j] = 1;
            m[s][j] -= 2 * bilinear(&w, j, s);
        }
        m
    };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let len = rng.gen_range(0..12);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..p)).collect();
        let mut acc: Vec<Vec<i64>> = (0..p).map(|i| (0..p).map(|j| (i == j) as i64).collect()).collect();
        for &s in &word {
            let g = gen(s);
            acc = (0..p)
                .map(|i| (0..p).map(|j| (0..p).map(|t| acc[i][t] * g[t][j]).sum()).collect())
                .collect();
        }
        let m = tits_matrix(&w, &word);
        for i in 0..p {
            for j in 0..p {
                assert_eq!(*m.get(i, j), BigInt::from(acc[i][j]), "{word:?}");
            }
        }
        assert_eq!(m.is_identity(), normal_form(&w, &word).is_empty(), "{word:?}");
    }
}

#[test]
fn rewriting_oracle_on_a_pentagon() {
    // right-angled pentagon group: generators commute with their two neighbours
    let w = Racg::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
    let oracle = RewriteOracle::new(&w);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let len = rng.gen_range(0..11);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..5)).collect();
        let canon = oracle.closure_min(&word);
        assert_eq!(normal_form(&w, &word), canon, "{word:?}");
        assert_eq!(reduce(&w, &word).len(), canon.len(), "{word:?}");
    }
}
