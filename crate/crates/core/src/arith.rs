//! Small modular arithmetic helpers shared by the graph tower and the pipeline.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Euler criterion for an odd prime `q`: true iff `a` is a nonzero square mod `q`.
pub fn is_quadratic_residue(a: u64, q: u64) -> bool {
    let a = a % q;
    a != 0 && pow_mod(a, (q - 1) / 2, q) == 1
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `a` mod `m`, if it is a unit.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Writes `m = q^n` with `q` prime, if possible.
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let q = (2..=m).find(|d| m.is_multiple_of(*d))?;
    let mut rest = m;
    let mut n = 0;
    while rest.is_multiple_of(q) {
        rest /= q;
        n += 1;
    }
    (rest == 1).then_some((q, n))
}

/// A square root of −1 modulo `q^n`, lifted from a root mod `q` by Hensel steps.
pub fn sqrt_neg_one(q: u64, n: u32) -> Option<u64> {
    if q % 4 != 1 || !is_prime(q) {
        return None;
    }
    let mut r = (1..q).find(|&x| x * x % q == q - 1)?;
    let mut modulus = q;
    for _ in 1..n {
        modulus *= q;
        // r' = r - (r^2 + 1) / (2r)
        let f = (mul_mod(r, r, modulus) + 1) % modulus;
        let inv = inv_mod(2 * r % modulus, modulus)?;
        r = (r + modulus - mul_mod(f, inv, modulus)) % modulus;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn residues() {
        assert!(!is_quadratic_residue(17, 5));
        assert!(is_quadratic_residue(4, 5));
        assert!(is_quadratic_residue(10, 13));
        assert!(!is_quadratic_residue(5, 13));
    }

    #[test]
    fn hensel_roots() {
        for (q, n) in [(5u64, 1u32), (5, 3), (13, 2), (17, 4)] {
            let m = q.pow(n);
            let r = sqrt_neg_one(q, n).unwrap();
            assert_eq!(mul_mod(r, r, m), m - 1);
        }
        assert_eq!(sqrt_neg_one(3, 2), None);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(125), Some((5, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(inv_mod(3, 25), Some(17));
        assert_eq!(inv_mod(5, 25), None);
    }
}
