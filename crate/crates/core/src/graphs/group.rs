use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::arith::{inv_mod, is_quadratic_residue, prime_power};
use crate::error::{Error, Result};

/// Largest group the closure routines will enumerate.
pub const GROUP_ORDER_GUARD: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixKind {
    #[serde(rename = "PSL")]
    Psl,
    #[serde(rename = "PGL")]
    Pgl,
}

pub type Mat2 = [u64; 4];

pub fn mat_mul(a: &Mat2, b: &Mat2, m: u64) -> Mat2 {
    let m = m as u128;
    let f = |x: u64, y: u64, z: u64, w: u64| {
        ((x as u128 * y as u128 + z as u128 * w as u128) % m) as u64
    };
    [
        f(a[0], b[0], a[1], b[2]),
        f(a[0], b[1], a[1], b[3]),
        f(a[2], b[0], a[3], b[2]),
        f(a[2], b[1], a[3], b[3]),
    ]
}

pub fn mat_det(a: &Mat2, m: u64) -> u64 {
    let m128 = m as u128;
    let p = a[0] as u128 * a[3] as u128 % m128;
    let q = a[1] as u128 * a[2] as u128 % m128;
    ((p + m128 - q) % m128) as u64
}

/// Projective canonical form: scale by the inverse of the first unit entry in row-major order.
/// For a prime modulus this is the first nonzero entry. `None` if no entry is a unit.
pub fn projectivize(a: &Mat2, m: u64) -> Option<Mat2> {
    let lead = a.iter().find_map(|&x| inv_mod(x % m, m))?;
    Some(a.map(|x| (x as u128 * lead as u128 % m as u128) as u64))
}

/// Adjugate, the projective inverse.
pub fn mat_adj(a: &Mat2, m: u64) -> Mat2 {
    let neg = |x: u64| (m - x % m) % m;
    [a[3], neg(a[1]), neg(a[2]), a[0]]
}

/// Projective 2×2 matrix group over Z/m, stored as an explicit element list.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    modulus: u64,
    kind: MatrixKind,
    elements: Vec<Mat2>,
    index: HashMap<Mat2, usize>,
    inverses: Vec<usize>,
}

impl MatrixGroup {
    fn from_elements(modulus: u64, kind: MatrixKind, elements: Vec<Mat2>) -> Self {
        let index: HashMap<Mat2, usize> =
            elements.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let inverses = elements
            .iter()
            .map(|a| {
                let b = projectivize(&mat_adj(a, modulus), modulus).expect("unit determinant");
                index[&b]
            })
            .collect();
        Self {
            modulus,
            kind,
            elements,
            index,
            inverses,
        }
    }

    fn check_modulus(modulus: u64) -> Result<()> {
        if modulus < 2 {
            return Err(Error::Parameter(format!("modulus must be >= 2, got {modulus}")));
        }
        Ok(())
    }

    /// Subgroup generated by `gens` (given as raw matrices with unit determinant).
    pub fn generated(modulus: u64, kind: MatrixKind, gens: &[Mat2]) -> Result<Self> {
        Self::check_modulus(modulus)?;
        let mut canon = Vec::with_capacity(gens.len());
        for g in gens {
            if inv_mod(mat_det(g, modulus), modulus).is_none() {
                return Err(Error::Parameter(format!(
                    "generator {g:?} has non-unit determinant mod {modulus}"
                )));
            }
            let c = projectivize(g, modulus).expect("unit determinant implies a unit entry");
            if kind == MatrixKind::Psl && !det_is_square(&c, modulus) {
                return Err(Error::Parameter(format!(
                    "generator {g:?} does not lie in PSL(2, Z/{modulus})"
                )));
            }
            canon.push(c);
        }
        let id = [1, 0, 0, 1];
        let mut elements = vec![id];
        let mut seen: HashMap<Mat2, ()> = HashMap::from([(id, ())]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &canon {
                let y = projectivize(&mat_mul(&x, g, modulus), modulus).unwrap();
                if seen.insert(y, ()).is_none() {
                    if elements.len() >= GROUP_ORDER_GUARD {
                        return Err(Error::TooLarge {
                            what: "generated matrix group".into(),
                            size: elements.len() + 1,
                            limit: GROUP_ORDER_GUARD,
                        });
                    }
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_elements(modulus, kind, elements))
    }

    /// The whole group PSL(2, Z/m) or PGL(2, Z/m), by enumeration.
    pub fn full(modulus: u64, kind: MatrixKind) -> Result<Self> {
        Self::check_modulus(modulus)?;
        let cells = (modulus as u128).pow(4);
        if cells > 50_000_000 {
            return Err(Error::TooLarge {
                what: "matrix enumeration".into(),
                size: cells.min(usize::MAX as u128) as usize,
                limit: 50_000_000,
            });
        }
        let mut elements = vec![[1, 0, 0, 1]];
        let mut seen = HashMap::from([([1, 0, 0, 1], ())]);
        let m = modulus;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        let x = [a, b, c, d];
                        if inv_mod(mat_det(&x, m), m).is_none() {
                            continue;
                        }
                        let y = projectivize(&x, m).unwrap();
                        if y != x {
                            continue;
                        }
                        if kind == MatrixKind::Psl && !det_is_square(&y, m) {
                            continue;
                        }
                        if seen.insert(y, ()).is_none() {
                            elements.push(y);
                        }
                    }
                }
            }
        }
        Ok(Self::from_elements(modulus, kind, elements))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> Mat2 {
        self.elements[i]
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    /// Index of a raw matrix after projectivization, if it lies in the group.
    pub fn index_of(&self, a: &Mat2) -> Option<usize> {
        let c = projectivize(&a.map(|x| x % self.modulus), self.modulus)?;
        self.index.get(&c).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let c = mat_mul(&self.elements[a], &self.elements[b], self.modulus);
        let c = projectivize(&c, self.modulus).expect("group closed under product");
        self.index[&c]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// Whether the determinant is a square unit; invariant under projective scaling.
pub fn det_is_square(a: &Mat2, m: u64) -> bool {
    let d = mat_det(a, m);
    match prime_power(m) {
        Some((2, _)) | None => {
            (1..m).any(|x| inv_mod(x, m).is_some() && (x as u128 * x as u128 % m as u128) as u64 == d)
        }
        Some((q, _)) => is_quadratic_residue(d, q),
    }
}

/// Order of PSL(2, p) or PGL(2, p) for an odd prime `p`.
pub fn projective_order(p: u64, kind: MatrixKind) -> u64 {
    let pgl = p * (p * p - 1);
    match kind {
        MatrixKind::Pgl => pgl,
        MatrixKind::Psl => pgl / 2,
    }
}

/// Finite group with elements indexed `0..order`; index 0 is always the identity.
#[derive(Debug, Clone)]
pub enum FiniteGroup {
    Cyclic(u64),
    Matrix(Arc<MatrixGroup>),
    Product(Arc<FiniteGroup>, Arc<FiniteGroup>),
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        FiniteGroup::Cyclic(1)
    }

    pub fn matrix(g: MatrixGroup) -> Self {
        FiniteGroup::Matrix(Arc::new(g))
    }

    pub fn product(a: FiniteGroup, b: FiniteGroup) -> Self {
        FiniteGroup::Product(Arc::new(a), Arc::new(b))
    }

    pub fn order(&self) -> usize {
        match self {
            FiniteGroup::Cyclic(n) => *n as usize,
            FiniteGroup::Matrix(g) => g.order(),
            FiniteGroup::Product(a, b) => a.order() * b.order(),
        }
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        match self {
            FiniteGroup::Cyclic(n) => (x + y) % *n as usize,
            FiniteGroup::Matrix(g) => g.mul(x, y),
            FiniteGroup::Product(a, b) => {
                let nb = b.order();
                a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
            }
        }
    }

    pub fn inv(&self, x: usize) -> usize {
        match self {
            FiniteGroup::Cyclic(n) => (*n as usize - x) % *n as usize,
            FiniteGroup::Matrix(g) => g.inv(x),
            FiniteGroup::Product(a, b) => {
                let nb = b.order();
                a.inv(x / nb) * nb + b.inv(x % nb)
            }
        }
    }

    pub fn pair(&self, x: usize, y: usize) -> usize {
        match self {
            FiniteGroup::Product(_, b) => x * b.order() + y,
            _ => panic!("pair() called on a non-product group"),
        }
    }

    pub fn split(&self, z: usize) -> (usize, usize) {
        match self {
            FiniteGroup::Product(_, b) => (z / b.order(), z % b.order()),
            _ => panic!("split() called on a non-product group"),
        }
    }

    pub fn factors(&self) -> Option<(&FiniteGroup, &FiniteGroup)> {
        match self {
            FiniteGroup::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Ordered product of a sequence of elements.
    pub fn product_of(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.identity(), |acc, x| self.mul(acc, x))
    }

    /// Elements of the subgroup generated by `gens`, in breadth-first order from the identity.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity()] = true;
        let mut out = vec![self.identity()];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out
    }

    pub fn element_json(&self, x: usize) -> Value {
        match self {
            FiniteGroup::Cyclic(_) => json!(x),
            FiniteGroup::Matrix(g) => json!(g.element(x)),
            FiniteGroup::Product(a, b) => {
                let nb = b.order();
                json!([a.element_json(x / nb), b.element_json(x % nb)])
            }
        }
    }

    pub fn element_from_json(&self, v: &Value) -> Result<usize> {
        let bad = || Error::Structural(format!("group element {v} not recognized"));
        match self {
            FiniteGroup::Cyclic(n) => {
                let x = v.as_i64().ok_or_else(bad)?;
                Ok(x.rem_euclid(*n as i64) as usize)
            }
            FiniteGroup::Matrix(g) => {
                let m: Vec<u64> = serde_json::from_value(v.clone()).map_err(|_| bad())?;
                let m: Mat2 = m.try_into().map_err(|_| bad())?;
                g.index_of(&m).ok_or_else(bad)
            }
            FiniteGroup::Product(a, b) => {
                let parts = v.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
                Ok(a.element_from_json(&parts[0])? * b.order() + b.element_from_json(&parts[1])?)
            }
        }
    }

    pub fn descriptor(&self) -> GroupJson {
        match self {
            FiniteGroup::Cyclic(n) => GroupJson {
                kind: "Z".into(),
                modulus: *n,
            },
            FiniteGroup::Matrix(g) => GroupJson {
                kind: match g.kind() {
                    MatrixKind::Psl => "PSL".into(),
                    MatrixKind::Pgl => "PGL".into(),
                },
                modulus: g.modulus(),
            },
            FiniteGroup::Product(a, _) => {
                let d = a.descriptor();
                GroupJson {
                    kind: format!("{}x{}", d.kind, d.kind),
                    modulus: d.modulus,
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub modulus: u64,
}
