use super::group::{FiniteGroup, Mat2, MatrixGroup};
use super::multigraph::theta_graph;
use super::voltage::{CoveringMap, VoltageAssignment};
use super::group::{mat_adj, mat_mul, MatrixKind};
use crate::arith::{gcd, is_prime, is_quadratic_residue, prime_power, sqrt_neg_one};
use crate::error::{Error, Result};

/// Integer quaternions `(a, b, c, d)` with `a² + b² + c² + d² = p`, `a > 0` odd and
/// `b, c, d` even, in lexicographic order.
pub fn quaternion_solutions(p: u64) -> Vec<[i64; 4]> {
    let p = p as i64;
    let r = (p as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for a in (1..=r).step_by(2) {
        for b in (-r..=r).filter(|x| x % 2 == 0) {
            for c in (-r..=r).filter(|x| x % 2 == 0) {
                for d in (-r..=r).filter(|x| x % 2 == 0) {
                    if a * a + b * b + c * c + d * d == p {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn check_lps_params(p: u64, modulus: u64) -> Result<(u64, u32, u64)> {
    if !is_prime(p) {
        return Err(Error::Parameter(format!("p = {p} is not prime")));
    }
    if p % 4 != 1 {
        return Err(Error::Parameter(format!("p = {p} is not congruent to 1 mod 4")));
    }
    let (q, n) = prime_power(modulus)
        .filter(|&(q, _)| q % 2 == 1)
        .ok_or_else(|| {
            Error::Parameter(format!("modulus {modulus} is not an odd prime power"))
        })?;
    if gcd(p, q) != 1 {
        return Err(Error::Parameter(format!("modulus {modulus} is not coprime to p = {p}")));
    }
    if is_quadratic_residue(p, q) {
        return Err(Error::Parameter(format!("p = {p} is a square modulo q = {q}")));
    }
    let i = sqrt_neg_one(q, n).ok_or_else(|| {
        Error::Parameter(format!("no square root of -1 modulo {modulus} (q = {q} is 3 mod 4)"))
    })?;
    Ok((q, n, i))
}

/// Generator matrices `[[a+bi, c+di], [−c+di, a−bi]]` mod `modulus`, one per quaternion solution.
pub fn lps_generators(p: u64, modulus: u64) -> Result<Vec<Mat2>> {
    let (_, _, i) = check_lps_params(p, modulus)?;
    let m = modulus as i128;
    let i = i as i128;
    let r = |x: i128| x.rem_euclid(m) as u64;
    Ok(quaternion_solutions(p)
        .into_iter()
        .map(|[a, b, c, d]| {
            let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
            [r(a + b * i), r(c + d * i), r(-c + d * i), r(a - b * i)]
        })
        .collect())
}

/// LPS-style voltages on Θ_{p+1}: `e_j ↦ s_j·s_{p+1}^{−1}` in the PSL-type group they generate.
pub fn lps_voltages(p: u64, modulus: u64) -> Result<VoltageAssignment> {
    let gens = lps_generators(p, modulus)?;
    let last_inv = mat_adj(gens.last().expect("p + 1 solutions"), modulus);
    let mats: Vec<Mat2> = gens.iter().map(|s| mat_mul(s, &last_inv, modulus)).collect();
    let group = MatrixGroup::generated(modulus, MatrixKind::Psl, &mats)?;
    let voltages = mats
        .iter()
        .map(|m| group.index_of(m).expect("generator lies in its own closure"))
        .collect();
    VoltageAssignment::new(
        theta_graph(gens.len())?,
        FiniteGroup::matrix(group),
        voltages,
    )
}

/// Reduces voltages modulo a divisor of the current modulus. Returns the reduced
/// assignment and the projection from old group elements to new ones.
pub fn reduce_voltages(
    va: &VoltageAssignment,
    new_modulus: u64,
) -> Result<(VoltageAssignment, Vec<usize>)> {
    let (group, proj) = match &va.group {
        FiniteGroup::Cyclic(n) => {
            if new_modulus == 0 || n % new_modulus != 0 {
                return Err(Error::Parameter(format!("{new_modulus} does not divide {n}")));
            }
            let proj = (0..*n as usize).map(|x| x % new_modulus as usize).collect();
            (FiniteGroup::Cyclic(new_modulus), proj)
        }
        FiniteGroup::Matrix(g) => {
            let m = g.modulus();
            if new_modulus < 2 || m % new_modulus != 0 {
                return Err(Error::Parameter(format!("{new_modulus} does not divide {m}")));
            }
            let reduce = |a: Mat2| a.map(|x| x % new_modulus);
            let mats: Vec<Mat2> = va.voltages.iter().map(|&x| reduce(g.element(x))).collect();
            let low = MatrixGroup::generated(new_modulus, g.kind(), &mats)?;
            let proj = g
                .elements()
                .iter()
                .map(|&a| {
                    low.index_of(&reduce(a)).ok_or_else(|| {
                        Error::Internal("reduced element outside the reduced group".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (FiniteGroup::matrix(low), proj)
        }
        FiniteGroup::Product(..) => {
            return Err(Error::Parameter("cannot reduce product-group voltages".into()))
        }
    };
    let voltages = va.voltages.iter().map(|&x| proj[x]).collect();
    Ok((VoltageAssignment::new(va.base.clone(), group, voltages)?, proj))
}

fn modulus_of(g: &FiniteGroup) -> Option<u64> {
    match g {
        FiniteGroup::Cyclic(n) => Some(*n),
        FiniteGroup::Matrix(m) => Some(m.modulus()),
        FiniteGroup::Product(..) => None,
    }
}

/// One step down the tower: voltages mod `q^{n+1}` reduced mod `q^n`.
pub fn tower_projection(va_high: &VoltageAssignment) -> Result<(VoltageAssignment, Vec<usize>)> {
    let m = modulus_of(&va_high.group)
        .ok_or_else(|| Error::Parameter("product groups have no tower".into()))?;
    match prime_power(m) {
        Some((q, n)) if n >= 2 => reduce_voltages(va_high, m / q),
        _ => Err(Error::Parameter(format!(
            "modulus {m} is not q^(n+1) with n >= 1"
        ))),
    }
}

/// Cell map between the derived covers of two assignments on the same base, induced by
/// a group projection `proj` from the first group onto the second.
pub fn induced_cover_map(
    high: &VoltageAssignment,
    low: &VoltageAssignment,
    proj: &[usize],
) -> CoveringMap {
    let nh = high.group.order();
    let nl = low.group.order();
    CoveringMap {
        vertex_map: (0..high.base.vertex_count() * nh)
            .map(|i| (i / nh) * nl + proj[i % nh])
            .collect(),
        edge_map: (0..high.base.edge_count() * nh)
            .map(|i| (i / nh) * nl + proj[i % nh])
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{check_covering, voltage_cover};

    #[test]
    fn seventeen_has_eighteen_solutions() {
        let sols = quaternion_solutions(17);
        assert_eq!(sols.len(), 18);
        let ones = sols.iter().filter(|s| s[0] == 1).count();
        let threes = sols.iter().filter(|s| s[0] == 3).count();
        assert_eq!((ones, threes), (6, 12));
        assert_eq!(quaternion_solutions(5).len(), 6);
        assert_eq!(quaternion_solutions(13).len(), 14);
    }

    #[test]
    fn parameter_errors_name_the_condition() {
        let msg = |r: Result<VoltageAssignment>| r.unwrap_err().to_string();
        assert!(msg(lps_voltages(19, 5)).contains("1 mod 4"));
        assert!(msg(lps_voltages(29, 5)).contains("square modulo"));
        assert!(msg(lps_voltages(17, 3)).contains("square root of -1"));
        assert!(msg(lps_voltages(21, 5)).contains("not prime"));
        assert!(msg(lps_voltages(17, 15)).contains("odd prime power"));
    }

    #[test]
    fn x_17_5_is_psl25_cover() {
        let va = lps_voltages(17, 5).unwrap();
        assert_eq!(va.group.order(), 60);
        assert_eq!(va.voltages[17], va.group.identity());
        let (c, _) = voltage_cover(&va);
        assert_eq!((c.vertex_count(), c.edge_count()), (120, 1080));
        assert!(c.degrees().iter().all(|&d| d == 18));
        assert!(c.is_connected());
        assert!(c.bipartition().is_some());
    }

    #[test]
    fn cyclic_tower_step() {
        let base = theta_graph(2).unwrap();
        let va = VoltageAssignment::new(base, FiniteGroup::Cyclic(25), vec![1, 0]).unwrap();
        let (low, proj) = tower_projection(&va).unwrap();
        assert_eq!(low.group.order(), 5);
        let (ch, _) = voltage_cover(&va);
        let (cl, _) = voltage_cover(&low);
        assert_eq!(ch.vertex_count(), 50);
        assert_eq!(cl.vertex_count(), 10);
        let map = induced_cover_map(&va, &low, &proj);
        assert!(check_covering(&ch, &cl, &map).unwrap());
        assert!(tower_projection(&low).is_err());
    }

    #[test]
    fn reduction_by_own_modulus_is_identity() {
        let va = lps_voltages(17, 5).unwrap();
        let (same, proj) = reduce_voltages(&va, 5).unwrap();
        assert_eq!(same.voltages, va.voltages);
        assert_eq!(proj, (0..60).collect::<Vec<_>>());
    }

    #[test]
    fn matrix_tower_step_is_a_cover() {
        let high = lps_voltages(13, 25).unwrap();
        let (low, proj) = tower_projection(&high).unwrap();
        assert_eq!(low.group.order(), lps_voltages(13, 5).unwrap().group.order());
        let (ch, _) = voltage_cover(&high);
        let (cl, _) = voltage_cover(&low);
        assert!(check_covering(&ch, &cl, &induced_cover_map(&high, &low, &proj)).unwrap());
    }
}
