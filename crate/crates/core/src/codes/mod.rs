//! Rank-metric codes: subspaces of matrix spaces, their minimum rank
//! distance, and exhaustive density counts.

pub mod ambient;
pub mod formulas;
pub mod grassmannian;

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::error::{invalid, Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{rref_in_place, Matrix};
use crate::qcomb::{qbinom, qpow, ratio, to_f64};

pub use ambient::{Ambient, Kind, MinRankScratch};
pub use grassmannian::Grassmannian;

/// A nonzero F_q-subspace of n×m matrices, stored by the RREF of its
/// flattened (row-major) basis.
#[derive(Clone)]
pub struct MatrixCode {
    field: Arc<Field>,
    n: usize,
    m: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for MatrixCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MatrixCode({}x{}, k={}, {:?})", self.n, self.m, self.dim(), self.basis.data)
    }
}

impl PartialEq for MatrixCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && self.basis == other.basis
    }
}

impl Eq for MatrixCode {}

impl MatrixCode {
    /// Span of the given flattened matrices. Errors on the zero code.
    pub fn new(field: Arc<Field>, n: usize, m: usize, generators: &[Vec<Elem>]) -> Result<Self> {
        if generators.iter().any(|g| g.len() != n * m) {
            return invalid("generator has the wrong size");
        }
        if generators.iter().flatten().any(|&x| x as u64 >= field.order()) {
            return invalid("entry outside the field");
        }
        let mut data: Vec<Elem> = generators.iter().flatten().copied().collect();
        let pivots = rref_in_place(&field, &mut data, generators.len(), n * m);
        if pivots.is_empty() {
            return invalid("the zero subspace is not a code");
        }
        data.truncate(pivots.len() * n * m);
        let basis = Matrix::from_vec(pivots.len(), n * m, data);
        Ok(MatrixCode { field, n, m, basis, pivots })
    }

    pub fn from_matrices(field: Arc<Field>, mats: &[Matrix]) -> Result<Self> {
        let (n, m) = mats.first().map(|x| (x.rows, x.cols)).ok_or_else(|| Error::InvalidArgument("no generators".into()))?;
        let gens: Vec<Vec<Elem>> = mats.iter().map(|x| x.data.clone()).collect();
        Self::new(field, n, m, &gens)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, mat: &[Elem]) -> bool {
        crate::linalg::in_row_space(&self.field, &self.basis, &self.pivots, mat)
    }

    /// Minimum rank over all q^k − 1 nonzero codewords.
    pub fn min_distance(&self) -> usize {
        let amb = Ambient::full(self.field.clone(), self.n, self.m).expect("valid shape");
        let mut s = MinRankScratch::new(false);
        amb.min_rank(&self.basis.data, self.dim(), 0, &mut s).expect("code is nonzero")
    }

    /// dim = max(n,m)·(min(n,m) − d + 1).
    pub fn is_mrd(&self) -> bool {
        let d = self.min_distance();
        let (a, b) = (self.n.min(self.m), self.n.max(self.m));
        self.dim() == b * (a + 1 - d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Formula,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityResult {
    pub kind: Kind,
    pub q: u64,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub d: usize,
    pub count: BigUint,
    pub total: BigUint,
    pub density: BigRational,
    pub method: Method,
    pub elapsed_ms: u128,
}

pub(crate) fn big_json(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub(crate) fn int_json(x: &num_bigint::BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

impl DensityResult {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "q": self.q,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "d": self.d,
            "count": big_json(&self.count),
            "total": big_json(&self.total),
            "density_num": int_json(self.density.numer()),
            "density_den": int_json(self.density.denom()),
            "density_float": to_f64(&self.density),
            "method": self.method,
            "elapsed_ms": self.elapsed_ms as u64,
        });
        if self.kind != Kind::Full {
            v["kind"] = json!(self.kind);
        }
        v
    }

    /// The same object without the wall-clock field.
    pub fn to_json_stable(&self) -> Value {
        let mut v = self.to_json();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    }
}

/// Number of k-dimensional subspaces of the ambient whose nonzero elements
/// all have rank ≥ d.
pub fn density_in_ambient(amb: &Ambient, k: usize, d: usize, budget: &Budget) -> Result<DensityResult> {
    let start = Instant::now();
    let dim = amb.dim();
    let q = amb.q();
    if k == 0 || k > dim {
        return invalid(format!("k must lie in 1..={dim}"));
    }
    let total = qbinom(dim as i64, k as i64, q);
    budget.check_big(&(&total * qpow(q, k as u64)))?;
    let g = Grassmannian::new(dim, k, q, budget)?;
    let count = if d <= 1 {
        BigUint::from(g.len())
    } else if d > amb.rows().min(amb.cols()) {
        BigUint::zero()
    } else {
        let work = g.len().saturating_mul(q.pow(k as u32) as u128);
        let use_table = amb.table_feasible() && work > 4 * (q as u128).pow(dim as u32);
        BigUint::from(g.par_count(
            || MinRankScratch::new(use_table),
            |s, basis| amb.min_rank(basis, k, d, s).is_some_and(|r| r >= d),
        ))
    };
    Ok(DensityResult {
        kind: amb.kind(),
        q,
        n: amb.rows(),
        m: amb.cols(),
        k,
        d,
        density: ratio(count.clone(), total.clone()),
        count,
        total,
        method: Method::BruteForce,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// δ_q(n×m, k, d) by enumerating every k-dimensional subspace.
pub fn density_bruteforce(n: usize, m: usize, k: usize, d: usize, q: u64, budget: &Budget) -> Result<DensityResult> {
    let f = Arc::new(Field::from_q(q)?);
    let amb = Ambient::full(f, n, m)?;
    density_in_ambient(&amb, k, d, budget)
}

/// s_q(m): m×m matrices M with M − λI invertible for every λ ∈ F_q.
pub fn spectrum_free_count(m: usize, q: u64, budget: &Budget) -> Result<BigUint> {
    let f = Arc::new(Field::from_q(q)?);
    if m == 0 {
        return invalid("m must be positive");
    }
    let total = (q as u128).checked_pow((m * m) as u32).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget: budget.limit() })?;
    budget.check(total.saturating_mul(q as u128))?;
    let amb = Ambient::full(f.clone(), m, m)?;
    let total = total as u64;
    let chunk = (total / 256).max(1024);
    let count: u64 = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut scratch = Vec::new();
            let mut cnt = 0u64;
            for idx in c * chunk..((c + 1) * chunk).min(total) {
                let mut mat = amb.coords_of(idx);
                let ok = (0..q as Elem).all(|lambda| {
                    let saved: Vec<Elem> = (0..m).map(|i| mat[i * m + i]).collect();
                    for i in 0..m {
                        mat[i * m + i] = f.sub(saved[i], lambda);
                    }
                    let full = amb.rank_with(&mat, &mut scratch) == m;
                    for i in 0..m {
                        mat[i * m + i] = saved[i];
                    }
                    full
                });
                if ok {
                    cnt += 1;
                }
            }
            cnt
        })
        .sum();
    Ok(BigUint::from(count))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HejarCheck {
    pub m: usize,
    pub q: u64,
    /// δ(2×m, m, 2)·⟦2m, m⟧_q, from the subspace enumeration.
    pub lhs: String,
    /// s_q(m), from the matrix enumeration.
    pub rhs: String,
    pub holds: bool,
}

/// Checks δ_q(2×m, m, 2)·⟦2m, m⟧_q = s_q(m) with both sides enumerated.
pub fn hejar_identity_check(m: usize, q: u64, budget: &Budget) -> Result<HejarCheck> {
    let dens = density_bruteforce(2, m, m, 2, q, budget)?;
    let lhs = dens.density * crate::qcomb::rat_int(qbinom(2 * m as i64, m as i64, q));
    let rhs = spectrum_free_count(m, q, budget)?;
    let holds = lhs == crate::qcomb::rat_int(rhs.clone());
    Ok(HejarCheck { m, q, lhs: lhs.to_string(), rhs: rhs.to_string(), holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcomb::rat_i;

    fn f(q: u64) -> Arc<Field> {
        Arc::new(Field::from_q(q).unwrap())
    }

    #[test]
    fn min_distance_examples() {
        let id = vec![1, 0, 0, 1];
        let c = MatrixCode::new(f(2), 2, 2, std::slice::from_ref(&id)).unwrap();
        assert_eq!(c.min_distance(), 2);
        let all: Vec<Vec<Elem>> = (0..4).map(|i| (0..4).map(|j| (i == j) as Elem).collect()).collect();
        let full = MatrixCode::new(f(2), 2, 2, &all).unwrap();
        assert_eq!(full.min_distance(), 1);
        assert!(full.is_mrd());
        // F_4 as 2×2 binary matrices: I and the companion matrix of x^2+x+1
        let f4 = MatrixCode::new(f(2), 2, 2, &[id, vec![0, 1, 1, 1]]).unwrap();
        assert_eq!(f4.min_distance(), 2);
        assert!(f4.is_mrd());
        let singular = MatrixCode::new(f(2), 2, 2, &[vec![1, 0, 0, 0]]).unwrap();
        assert!(!singular.is_mrd());
        assert!(MatrixCode::new(f(2), 2, 2, &[vec![0; 4]]).is_err());
    }

    #[test]
    fn small_densities() {
        let b = Budget::unlimited();
        let r = density_bruteforce(2, 2, 2, 2, 2, &b).unwrap();
        assert_eq!(r.count, BigUint::from(2u32));
        assert_eq!(r.density, BigRational::new(2.into(), 35.into()));
        assert_eq!(density_bruteforce(2, 3, 2, 1, 3, &b).unwrap().density, rat_i(1));
    }

    #[test]
    fn density_is_monotone_in_d() {
        let b = Budget::unlimited();
        for k in 1..=4 {
            let mut last = rat_i(2);
            for d in 1..=3 {
                let r = density_bruteforce(2, 3, k, d, 2, &b).unwrap().density;
                assert!(r <= last);
                last = r;
            }
        }
    }

    #[test]
    fn spectrum_free() {
        let b = Budget::unlimited();
        assert_eq!(spectrum_free_count(1, 2, &b).unwrap(), BigUint::zero());
        assert_eq!(spectrum_free_count(2, 2, &b).unwrap(), BigUint::from(2u32));
        assert_eq!(spectrum_free_count(2, 3, &b).unwrap(), BigUint::from(18u32));
    }

    #[test]
    fn json_shape() {
        let r = density_bruteforce(2, 2, 2, 2, 2, &Budget::unlimited()).unwrap();
        let v = r.to_json();
        for key in ["q", "n", "m", "k", "d", "count", "total", "density_num", "density_den", "density_float", "method", "elapsed_ms"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["method"], "brute_force");
        assert_eq!(v["density_den"], 35);
    }
}
