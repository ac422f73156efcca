use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, is_quadratic_residue};
use crate::error::{Error, Result};
use crate::hyperbolic::{DEFAULT_B_FRACTION, DEFAULT_R_MARGIN};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ConstructionParams {
    pub k: usize,
    pub q: u64,
    pub level: u32,
    pub b_fraction: f64,
    pub r_margin: f64,
    pub seed: u64,
    /// Residual the polyhedron solver must reach.
    pub tolerance: f64,
    /// Relaxes the arithmetic conditions and skips the geometric ledger entries.
    pub structural: bool,
}

impl Default for ConstructionParams {
    fn default() -> Self {
        Self {
            k: 18,
            q: 5,
            level: 1,
            b_fraction: DEFAULT_B_FRACTION,
            r_margin: DEFAULT_R_MARGIN,
            seed: 0,
            tolerance: 1e-13,
            structural: false,
        }
    }
}

impl ConstructionParams {
    /// The prime `p = k − 1` of the LPS construction.
    pub fn p(&self) -> u64 {
        self.k as u64 - 1
    }

    /// Whether the LPS graph for `(k − 1, q)` is defined.
    pub fn lps_applicable(&self) -> bool {
        arithmetic_violations(self).is_empty()
    }
}

fn arithmetic_violations(p: &ConstructionParams) -> Vec<String> {
    let mut out = Vec::new();
    let pk = p.k as u64;
    if pk < 2 {
        out.push(format!("k = {} must be at least 2", p.k));
        return out;
    }
    let prime = pk - 1;
    if !is_prime(prime) {
        out.push(format!("k − 1 = {prime} is not prime"));
    } else if prime % 4 != 1 {
        out.push(format!("k − 1 = {prime} is not 1 mod 4"));
    }
    if !is_prime(p.q) || p.q == 2 {
        out.push(format!("q = {} is not an odd prime", p.q));
    } else if p.q % 4 != 1 {
        out.push(format!("q = {} is 3 mod 4, so there is no square root of -1 for the LPS generators", p.q));
    } else if p.q == prime {
        out.push(format!("q = {} equals k − 1", p.q));
    } else if is_prime(prime) && is_quadratic_residue(prime % p.q, p.q) {
        out.push(format!("k − 1 = {prime} is a square modulo q = {}", p.q));
    }
    out
}

/// Checks the arithmetic and numeric conditions. Returns warnings in structural mode;
/// in certification mode every violation is an error.
pub fn validate_params(p: &ConstructionParams) -> Result<Vec<String>> {
    let mut hard = Vec::new();
    if p.level < 1 {
        hard.push(format!("level {} must be at least 1", p.level));
    }
    if !(p.b_fraction > 0.0 && p.b_fraction < 1.0) {
        hard.push(format!("b-fraction {} not in (0, 1)", p.b_fraction));
    }
    if !(p.r_margin > 1.0 && p.r_margin.is_finite()) {
        hard.push(format!("R-margin {} must exceed 1", p.r_margin));
    }
    if !(p.tolerance > 0.0 && p.tolerance < 1e-6) {
        hard.push(format!("tolerance {} not in (0, 1e-6)", p.tolerance));
    }
    if p.k < 3 {
        hard.push(format!("k = {} must be at least 3", p.k));
    }
    if p.q < 2 {
        hard.push(format!("q = {} must be at least 2", p.q));
    }
    if !hard.is_empty() {
        return Err(Error::Parameter(hard.join("; ")));
    }
    let mut soft = arithmetic_violations(p);
    if p.k < 18 {
        soft.insert(0, format!("k = {} is below 18", p.k));
    }
    if p.structural {
        Ok(soft)
    } else if soft.is_empty() {
        Ok(Vec::new())
    } else {
        Err(Error::Parameter(soft.join("; ")))
    }
}

/// Smallest `n ≥ 1` with `4n·log_p q − log_p 4 ≥ target`, the bipartite LPS girth bound.
pub fn required_level(p: u64, q: u64, girth_target: usize) -> u32 {
    let lp = |x: f64| x.ln() / (p as f64).ln();
    let need = (girth_target as f64 + lp(4.0)) / (4.0 * lp(q as f64));
    let mut n = need.ceil().max(1.0) as u32;
    // guard against rounding at exact boundaries
    while n > 1 && 4.0 * (n - 1) as f64 * lp(q as f64) - lp(4.0) >= girth_target as f64 {
        n -= 1;
    }
    while 4.0 * n as f64 * lp(q as f64) - lp(4.0) < girth_target as f64 {
        n += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(validate_params(&ConstructionParams::default()).unwrap().is_empty());
        let bad = ConstructionParams { k: 15, ..Default::default() };
        let msg = validate_params(&bad).unwrap_err().to_string();
        assert!(msg.contains("14 is not prime"), "{msg}");
        let toy = ConstructionParams { k: 6, q: 3, structural: true, ..Default::default() };
        assert!(!validate_params(&toy).unwrap().is_empty());
        let square = ConstructionParams { k: 18, q: 13, ..Default::default() };
        assert!(validate_params(&square).unwrap_err().to_string().contains("square"));
    }

    #[test]
    fn levels() {
        assert_eq!(required_level(17, 5, 74), 33);
        assert_eq!(required_level(17, 5, 6), 3);
        assert_eq!(required_level(17, 5, 0), 1);
    }
}
