use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::racg::{extends_normal_form, CoxWord, Racg};

/// Exact `p × p` integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TitsMatrix {
    pub p: usize,
    pub entries: Vec<BigInt>,
}

impl TitsMatrix {
    pub fn identity(p: usize) -> Self {
        let mut entries = vec![BigInt::zero(); p * p];
        for i in 0..p {
            entries[i * p + i] = BigInt::one();
        }
        Self { p, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.p + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.p)
    }

    pub fn mul(&self, other: &TitsMatrix) -> TitsMatrix {
        let p = self.p;
        let mut entries = vec![BigInt::zero(); p * p];
        for i in 0..p {
            for k in 0..p {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..p {
                    entries[i * p + j] += a * other.get(k, j);
                }
            }
        }
        TitsMatrix { p, entries }
    }

    /// Right multiplication by generator `t` in place.
    fn apply_generator(&mut self, w: &Racg, t: usize) {
        let p = self.p;
        for r in 0..p {
            let pit = self.entries[r * p + t].clone();
            if pit.is_zero() {
                continue;
            }
            for j in 0..p {
                let b = bilinear(w, t, j);
                if b != 0 {
                    self.entries[r * p + j] -= &pit * (2 * b);
                }
            }
        }
    }

    /// Entries reduced into `0..m`.
    pub fn reduce_mod(&self, m: u64) -> Vec<u64> {
        let mb = BigInt::from(m);
        self.entries
            .iter()
            .map(|x| {
                let r = x % &mb;
                let r = if r.is_negative() { r + &mb } else { r };
                r.to_u64().expect("reduced entry fits")
            })
            .collect()
    }

    /// gcd of the entries of `self − I`; zero iff `self` is the identity.
    pub fn identity_defect_gcd(&self) -> BigInt {
        let id = Self::identity(self.p);
        self.entries
            .iter()
            .zip(&id.entries)
            .fold(BigInt::zero(), |g, (a, b)| num_integer_gcd(g, (a - b).abs()))
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.p;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, r * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }
}

fn num_integer_gcd(a: BigInt, b: BigInt) -> BigInt {
    let (mut a, mut b) = (a, b);
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// `B(e_i, e_j)`: 1 on the diagonal, 0 for commuting pairs, −1 otherwise.
pub fn bilinear(w: &Racg, i: usize, j: usize) -> i64 {
    if i == j {
        1
    } else if w.commutes(i, j) {
        0
    } else {
        -1
    }
}

/// Matrix of `t_i : x ↦ x − 2B(x, e_i)e_i` in the basis `e_j`.
pub fn generator_matrix(w: &Racg, i: usize) -> TitsMatrix {
    let mut m = TitsMatrix::identity(w.generators());
    m.apply_generator(w, i);
    m
}

/// Image of a word under the Tits representation.
pub fn tits_matrix(w: &Racg, word: &[usize]) -> TitsMatrix {
    let mut m = TitsMatrix::identity(w.generators());
    for &t in word {
        m.apply_generator(w, t);
    }
    m
}

/// Checked `i64` matrix used by the exhaustive sweep; `None` signals overflow.
#[derive(Clone)]
struct SmallMatrix {
    p: usize,
    entries: Vec<i64>,
}

impl SmallMatrix {
    fn identity(p: usize) -> Self {
        let mut entries = vec![0; p * p];
        for i in 0..p {
            entries[i * p + i] = 1;
        }
        Self { p, entries }
    }

    fn times_generator(&self, w: &Racg, t: usize) -> Option<Self> {
        let p = self.p;
        let mut out = self.clone();
        for r in 0..p {
            let pit = self.entries[r * p + t];
            if pit == 0 {
                continue;
            }
            for j in 0..p {
                let b = bilinear(w, t, j);
                if b != 0 {
                    let d = pit.checked_mul(2 * b)?;
                    out.entries[r * p + j] = out.entries[r * p + j].checked_sub(d)?;
                }
            }
        }
        Some(out)
    }

    fn is_identity(&self) -> bool {
        self.entries == Self::identity(self.p).entries
    }
}

/// Outcome of the desk-scale faithfulness sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaithfulnessReport {
    pub words_checked: usize,
    /// Nontrivial normal forms mapped to the identity (empty when faithful).
    pub counterexamples: Vec<CoxWord>,
}

/// Walks every normal form of length `1..=max_len` (a prefix-closed set) and checks that
/// its Tits matrix is not the identity.
pub fn faithfulness_sweep(w: &Racg, max_len: usize) -> FaithfulnessReport {
    let mut report = FaithfulnessReport {
        words_checked: 0,
        counterexamples: Vec::new(),
    };
    let mut word = Vec::with_capacity(max_len);
    sweep(w, max_len, &mut word, &SmallMatrix::identity(w.generators()), &mut report);
    report
}

fn sweep(w: &Racg, max_len: usize, word: &mut CoxWord, m: &SmallMatrix, report: &mut FaithfulnessReport) {
    if word.len() == max_len {
        return;
    }
    for t in 0..w.generators() {
        if !extends_normal_form(w, word, t) {
            continue;
        }
        word.push(t);
        report.words_checked += 1;
        match m.times_generator(w, t) {
            Some(next) => {
                if next.is_identity() {
                    report.counterexamples.push(word.clone());
                }
                sweep(w, max_len, word, &next, report);
            }
            None => {
                // overflowed i64: finish this subtree exactly
                let big = tits_matrix(w, word);
                if big.is_identity() {
                    report.counterexamples.push(word.clone());
                }
                sweep_big(w, max_len, word, &big, report);
            }
        }
        word.pop();
    }
}

fn sweep_big(w: &Racg, max_len: usize, word: &mut CoxWord, m: &TitsMatrix, report: &mut FaithfulnessReport) {
    if word.len() == max_len {
        return;
    }
    for t in 0..w.generators() {
        if !extends_normal_form(w, word, t) {
            continue;
        }
        word.push(t);
        report.words_checked += 1;
        let mut next = m.clone();
        next.apply_generator(w, t);
        if next.is_identity() {
            report.counterexamples.push(word.clone());
        }
        sweep_big(w, max_len, word, &next, report);
        word.pop();
    }
}
