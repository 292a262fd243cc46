//! Linearized polynomials f = Σ_{i<n} f_i x^{q^i} over F_{q^n}.
//!
//! Matrices are taken with respect to the power basis 1, t, …, t^{n−1} of
//! the modulus root t: column j holds the F_q-coordinates of f(t^j). Under
//! this convention `to_matrix(f ∘ g) = to_matrix(f) · to_matrix(g)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;

#[derive(Clone, PartialEq, Eq)]
pub struct LinPoly {
    field: Arc<Field>,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for LinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinPoly{:?}", self.coeffs)
    }
}

impl std::hash::Hash for LinPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl LinPoly {
    pub fn new(field: Arc<Field>, coeffs: Vec<Elem>) -> Result<Self> {
        let n = field.degree() as usize;
        if coeffs.len() != n || coeffs.iter().any(|&c| c as u64 >= field.order()) {
            return invalid(format!("need {n} coefficients in the field"));
        }
        Ok(LinPoly { field, coeffs })
    }

    pub fn zero(field: Arc<Field>) -> Self {
        let n = field.degree() as usize;
        LinPoly { field, coeffs: vec![0; n] }
    }

    /// c · x^{q^i}
    pub fn monomial(field: Arc<Field>, c: Elem, i: u32) -> Self {
        let mut p = LinPoly::zero(field);
        let n = p.coeffs.len();
        p.coeffs[i as usize % n] = c;
        p
    }

    pub fn identity(field: Arc<Field>) -> Self {
        LinPoly::monomial(field, 1, 0)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_same(&self, other: &LinPoly) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn evaluate(&self, a: Elem) -> Elem {
        let f = &*self.field;
        self.coeffs
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &c)| if c == 0 { acc } else { f.add(acc, f.mul(c, f.frobenius(a, i as u32))) })
    }

    pub fn add(&self, other: &LinPoly) -> Result<LinPoly> {
        self.check_same(other)?;
        let f = &*self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(LinPoly { field: self.field.clone(), coeffs })
    }

    pub fn sub(&self, other: &LinPoly) -> Result<LinPoly> {
        self.check_same(other)?;
        let f = &*self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(LinPoly { field: self.field.clone(), coeffs })
    }

    /// Multiplies every coefficient by `c` (any element of F_{q^n}, so this
    /// is composition with c·x on the left).
    pub fn scale(&self, c: Elem) -> LinPoly {
        let f = &*self.field;
        LinPoly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|&a| f.mul(c, a)).collect() }
    }

    /// f ∘ g reduced modulo x^{q^n} − x.
    pub fn compose(&self, g: &LinPoly) -> Result<LinPoly> {
        self.check_same(g)?;
        let f = &*self.field;
        let n = self.n();
        let mut out = vec![0; n];
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if fi == 0 {
                continue;
            }
            for (j, &gj) in g.coeffs.iter().enumerate() {
                if gj != 0 {
                    let k = (i + j) % n;
                    out[k] = f.add(out[k], f.mul(fi, f.frobenius(gj, i as u32)));
                }
            }
        }
        Ok(LinPoly { field: self.field.clone(), coeffs: out })
    }

    /// Matrix over F_q in the power basis.
    pub fn to_matrix(&self) -> Matrix {
        let q = self.field.base_order() as Elem;
        let basis: Vec<Elem> = (0..self.n() as u32).map(|j| q.pow(j)).collect();
        self.to_matrix_wrt(&basis)
    }

    /// Matrix of a ↦ f(a) in an arbitrary ordered F_q-basis of F_{q^n}.
    pub fn to_matrix_wrt(&self, basis: &[Elem]) -> Matrix {
        let n = self.n();
        let coord = CoordMap::new(&self.field, basis).expect("basis must be F_q-independent");
        let mut m = Matrix::zeros(n, n);
        for (j, &b) in basis.iter().enumerate() {
            let col = coord.coords(self.evaluate(b));
            for i in 0..n {
                m.set(i, j, col[i]);
            }
        }
        m
    }

    pub fn from_matrix(field: Arc<Field>, m: &Matrix) -> Result<LinPoly> {
        MooreSolver::new(field)?.from_matrix(m)
    }

    pub fn rank(&self) -> usize {
        self.to_matrix().rank(&self.field.base().map_or_else(|| self.field.clone(), |b| b.clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n()
    }

    /// f_adj = Σ f_i^{q^{n−i}} x^{q^{n−i}}, the transpose for the trace form.
    pub fn adjoint(&self) -> LinPoly {
        let f = &*self.field;
        let n = self.n();
        let mut out = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = (n - i) % n;
            out[k] = f.frobenius(c, k as u32);
        }
        LinPoly { field: self.field.clone(), coeffs: out }
    }

    /// Applies x ↦ x^{p^ρ} to every coefficient.
    pub fn rho_twist(&self, rho: u32) -> LinPoly {
        let f = &*self.field;
        LinPoly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|&c| f.frobenius_p(c, rho)).collect() }
    }
}

/// F_q-coordinates with respect to a chosen basis of F_{q^n}.
pub struct CoordMap {
    base: Arc<Field>,
    inv: Matrix,
    power: bool,
    field: Arc<Field>,
}

impl CoordMap {
    pub fn new(field: &Arc<Field>, basis: &[Elem]) -> Result<Self> {
        let base = field.base().cloned().unwrap_or_else(|| field.clone());
        let n = field.degree() as usize;
        if basis.len() != n {
            return invalid("basis has the wrong length");
        }
        let q = field.base_order() as Elem;
        let power = basis.iter().enumerate().all(|(j, &b)| b == q.pow(j as u32));
        let mut m = Matrix::zeros(n, n);
        for (j, &b) in basis.iter().enumerate() {
            for (i, c) in field.coords(b).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        let inv = m.inverse(&base).ok_or_else(|| Error::InvalidArgument("basis is dependent".into()))?;
        Ok(CoordMap { base, inv, power, field: field.clone() })
    }

    pub fn coords(&self, a: Elem) -> Vec<Elem> {
        let c = self.field.coords(a);
        if self.power {
            c
        } else {
            self.inv.mul_vec(&self.base, &c)
        }
    }
}

/// Interpolates linearized polynomials from their values on the power basis.
pub struct MooreSolver {
    field: Arc<Field>,
    // inverse of A_{j,i} = (t^j)^{q^i}
    inv: Matrix,
}

impl MooreSolver {
    pub fn new(field: Arc<Field>) -> Result<Self> {
        let n = field.degree() as usize;
        let q = field.base_order() as Elem;
        let mut a = Matrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                a.set(j, i, field.frobenius(q.pow(j as u32), i as u32));
            }
        }
        let inv = a.inverse(&field).ok_or_else(|| Error::Precondition("singular Moore matrix".into()))?;
        Ok(MooreSolver { field, inv })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// The unique f with f(t^j) = values[j].
    pub fn from_values(&self, values: &[Elem]) -> Result<LinPoly> {
        if values.len() != self.inv.rows {
            return invalid("wrong number of values");
        }
        let coeffs = self.inv.mul_vec(&self.field, values);
        Ok(LinPoly { field: self.field.clone(), coeffs })
    }

    pub fn from_matrix(&self, m: &Matrix) -> Result<LinPoly> {
        let n = self.inv.rows;
        if m.rows != n || m.cols != n {
            return invalid("matrix has the wrong shape");
        }
        let q = self.field.base_order() as Elem;
        let values: Vec<Elem> = (0..n)
            .map(|j| (0..n).rev().fold(0, |acc, i| acc * q + m.get(i, j)))
            .collect();
        self.from_values(&values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_pair;

    #[test]
    fn identity_and_frobenius() {
        let (_, f4) = field_pair(2, 2).unwrap();
        let x = LinPoly::identity(f4.clone());
        let xq = LinPoly::monomial(f4.clone(), 1, 1);
        let w = f4.primitive();
        assert_eq!(x.evaluate(w), w);
        assert_eq!(xq.evaluate(w), f4.mul(w, w));
        assert_eq!(x.to_matrix(), Matrix::identity(2));
        assert_eq!(xq.compose(&xq).unwrap(), x);
        assert_eq!(LinPoly::zero(f4.clone()).rank(), 0);
        assert_eq!(x.rank(), 2);
        // x^q - x has kernel F_2
        assert_eq!(xq.sub(&x).unwrap().rank(), 1);
    }

    #[test]
    fn compose_agrees_with_evaluation_over_f8() {
        let (_, f8) = field_pair(2, 3).unwrap();
        let all: Vec<LinPoly> = (0..512u32)
            .map(|i| LinPoly::new(f8.clone(), vec![i & 7, (i >> 3) & 7, i >> 6]).unwrap())
            .collect();
        for f in all.iter().step_by(7) {
            for g in &all {
                let h = f.compose(g).unwrap();
                for a in f8.elements() {
                    assert_eq!(h.evaluate(a), f.evaluate(g.evaluate(a)));
                }
                assert_eq!(h.to_matrix(), f.to_matrix().mul(f8.base().unwrap(), &g.to_matrix()));
            }
        }
    }

    #[test]
    fn matrix_map_is_bijective() {
        for &(q, n) in &[(2u64, 3u32), (3, 2), (2, 4)] {
            let (base, ext) = field_pair(q, n).unwrap();
            let o = ext.order() as u32;
            let total = (o as u64).pow(n);
            let solver = MooreSolver::new(ext.clone()).unwrap();
            let mut seen = std::collections::HashSet::new();
            for idx in 0..total {
                let coeffs: Vec<Elem> = (0..n).map(|i| ((idx / (o as u64).pow(i)) % o as u64) as Elem).collect();
                let f = LinPoly::new(ext.clone(), coeffs).unwrap();
                let m = f.to_matrix();
                assert!(m.data.iter().all(|&c| (c as u64) < base.order()));
                if idx % 97 == 0 {
                    assert_eq!(solver.from_matrix(&m).unwrap(), f);
                }
                seen.insert(m);
            }
            assert_eq!(seen.len() as u64, q.pow(n * n));
        }
    }

    #[test]
    fn rank_counts_kernel() {
        let (_, f8) = field_pair(2, 3).unwrap();
        for i in (0..512u32).step_by(3) {
            let f = LinPoly::new(f8.clone(), vec![i & 7, (i >> 3) & 7, i >> 6]).unwrap();
            let kernel = f8.elements().filter(|&a| f.evaluate(a) == 0).count();
            assert_eq!(f.rank(), 3 - kernel.trailing_zeros() as usize);
        }
    }

    #[test]
    fn adjoint_trace_pairing() {
        let (_, f8) = field_pair(2, 3).unwrap();
        for i in (0..512u32).step_by(5) {
            let f = LinPoly::new(f8.clone(), vec![i & 7, (i >> 3) & 7, i >> 6]).unwrap();
            let fa = f.adjoint();
            assert_eq!(fa.adjoint(), f);
            for a in f8.elements() {
                for b in f8.elements() {
                    assert_eq!(f8.trace(f8.mul(f.evaluate(a), b)), f8.trace(f8.mul(a, fa.evaluate(b))));
                }
            }
        }
        let xq = LinPoly::monomial(f8.clone(), 1, 1);
        assert_eq!(xq.adjoint(), LinPoly::monomial(f8.clone(), 1, 2));
        assert_eq!(LinPoly::identity(f8.clone()).adjoint(), LinPoly::identity(f8));
    }

    #[test]
    fn twists() {
        let (_, f16) = field_pair(4, 2).unwrap();
        for i in 0..256u32 {
            let f = LinPoly::new(f16.clone(), vec![i & 15, i >> 4]).unwrap();
            assert_eq!(f.rho_twist(0), f);
            // twisting twice raises coefficients to the q-th power
            let twice = f.rho_twist(1).rho_twist(1);
            let frob: Vec<Elem> = f.coeffs().iter().map(|&c| f16.frobenius(c, 1)).collect();
            assert_eq!(twice.coeffs(), &frob[..]);
            if f.coeffs().iter().all(|&c| c < 4) {
                assert_eq!(twice, f);
            }
        }
    }

    #[test]
    fn second_basis_preserves_rank() {
        let (_, f9) = field_pair(3, 2).unwrap();
        let other = [f9.primitive(), f9.pow(f9.primitive(), 3)];
        for i in 0..81u32 {
            let f = LinPoly::new(f9.clone(), vec![i % 9, i / 9]).unwrap();
            let r1 = f.to_matrix().rank(f9.base().unwrap());
            let r2 = f.to_matrix_wrt(&other).rank(f9.base().unwrap());
            assert_eq!(r1, r2);
        }
    }
}
