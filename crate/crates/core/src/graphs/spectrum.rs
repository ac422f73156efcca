use nalgebra::{DMatrix, SymmetricEigen};

use super::multigraph::Multigraph;
use crate::error::{Error, Result};

fn sorted_eigs(m: DMatrix<f64>) -> Vec<f64> {
    let mut eigs: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    eigs.sort_by(f64::total_cmp);
    eigs
}

/// Spectrum of `I − D^{−1/2} A D^{−1/2}` in nondecreasing order.
pub fn normalized_laplacian_eigs(g: &Multigraph) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    let deg = g.degrees();
    if let Some(v) = deg.iter().position(|&d| d == 0) {
        return Err(Error::Degenerate(format!("vertex {v} is isolated")));
    }
    let a = g.adjacency();
    let s: Vec<f64> = deg.iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        id - s[i] * a[i][j] * s[j]
    });
    Ok(sorted_eigs(m))
}

/// Multi-adjacency spectrum in nondecreasing order.
pub fn adjacency_eigs(g: &Multigraph) -> Vec<f64> {
    let n = g.vertex_count();
    let a = g.adjacency();
    sorted_eigs(DMatrix::from_fn(n, n, |i, j| a[i][j]))
}

/// Second-smallest normalized Laplacian eigenvalue, if the graph has two vertices.
pub fn spectral_gap(g: &Multigraph) -> Result<Option<f64>> {
    Ok(normalized_laplacian_eigs(g)?.get(1).copied())
}

/// Żuk's criterion on a link: λ_1 > 1/2 strictly.
pub fn zuk_gap_check(g: &Multigraph) -> Result<bool> {
    Ok(spectral_gap(g)?.is_some_and(|l| l > 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::theta_graph;
    use std::f64::consts::PI;

    #[test]
    fn theta_spectrum() {
        let e = normalized_laplacian_eigs(&theta_graph(5).unwrap()).unwrap();
        assert!(e[0].abs() < 1e-12 && (e[1] - 2.0).abs() < 1e-12);
        assert!(zuk_gap_check(&theta_graph(5).unwrap()).unwrap());
    }

    #[test]
    fn cycle_spectrum() {
        for n in [4, 7, 12] {
            let e = normalized_laplacian_eigs(&Multigraph::cycle(n)).unwrap();
            let want = 1.0 - (2.0 * PI / n as f64).cos();
            assert!((e[1] - want).abs() < 1e-10, "n={n}");
        }
        assert!(!zuk_gap_check(&Multigraph::cycle(12)).unwrap());
    }

    #[test]
    fn isolated_vertex_rejected() {
        let g = Multigraph::from_pairs(3, &[(0, 1)]).unwrap();
        assert!(matches!(normalized_laplacian_eigs(&g), Err(Error::Degenerate(_))));
    }
}
