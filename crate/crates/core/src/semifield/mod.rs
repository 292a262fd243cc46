//! Presemifields on F_{q^n} given by a bilinear coefficient array, the
//! codes of right multiplications, and generalized twisted fields.

pub mod equiv;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{invalid, precondition, Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::linpoly::{LinPoly, MooreSolver};

pub use equiv::{
    aut_group_size_bruteforce, classify, find_equivalence, gl_elements, idealizers, is_equivalent_bruteforce, nuclei,
    EquivWitness, Idealizers, Nuclei,
};

/// x ⋆ y = Σ c_ij x^{q^i} y^{q^j}.
#[derive(Clone)]
pub struct Semifield {
    field: Arc<Field>,
    n: usize,
    coeffs: Vec<Elem>,
}

impl std::fmt::Debug for Semifield {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Semifield(n={}, c={:?})", self.n, self.coeffs)
    }
}

impl Semifield {
    pub fn new(field: Arc<Field>, coeffs: Vec<Elem>) -> Result<Self> {
        let n = field.degree() as usize;
        if coeffs.len() != n * n || coeffs.iter().any(|&c| c as u64 >= field.order()) {
            return invalid(format!("need {} coefficients", n * n));
        }
        Ok(Semifield { field, n, coeffs })
    }

    /// Multiplication of F_{q^n} itself.
    pub fn field_multiplication(field: Arc<Field>) -> Self {
        let n = field.degree() as usize;
        let mut coeffs = vec![0; n * n];
        coeffs[0] = 1;
        Semifield { field, n, coeffs }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeff(&self, i: usize, j: usize) -> Elem {
        self.coeffs[i * self.n + j]
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        let f = &*self.field;
        let n = self.n;
        let mut xs = [0 as Elem; 32];
        let mut ys = [0 as Elem; 32];
        for i in 0..n {
            xs[i] = f.frobenius(x, i as u32);
            ys[i] = f.frobenius(y, i as u32);
        }
        let mut acc = 0;
        for i in 0..n {
            if xs[i] == 0 {
                continue;
            }
            for j in 0..n {
                let c = self.coeffs[i * n + j];
                if c != 0 {
                    acc = f.add(acc, f.mul(c, f.mul(xs[i], ys[j])));
                }
            }
        }
        acc
    }

    /// Full multiplication table, indexed `x * order + y`.
    pub fn table(&self) -> Vec<Elem> {
        let o = self.field.order() as Elem;
        let mut t = Vec::with_capacity((o * o) as usize);
        for x in 0..o {
            for y in 0..o {
                t.push(self.mul(x, y));
            }
        }
        t
    }

    /// No zero divisors, checked over all nonzero pairs.
    pub fn is_presemifield(&self, budget: &Budget) -> Result<bool> {
        let o = self.field.order();
        budget.check((o as u128) * (o as u128))?;
        let o = o as Elem;
        Ok((1..o).all(|x| (1..o).all(|y| self.mul(x, y) != 0)))
    }

    pub fn has_identity(&self) -> bool {
        self.field.elements().all(|x| self.mul(1, x) == x && self.mul(x, 1) == x)
    }

    pub fn is_semifield(&self, budget: &Budget) -> Result<bool> {
        Ok(self.is_presemifield(budget)? && self.has_identity())
    }

    /// R_y as a linearized polynomial: coefficient of x^{q^i} is Σ_j c_ij y^{q^j}.
    pub fn right_mult(&self, y: Elem) -> LinPoly {
        let f = &*self.field;
        let n = self.n;
        let coeffs = (0..n)
            .map(|i| {
                (0..n).fold(0, |acc, j| f.add(acc, f.mul(self.coeffs[i * n + j], f.frobenius(y, j as u32))))
            })
            .collect();
        LinPoly::new(self.field.clone(), coeffs).expect("coefficients lie in the field")
    }
}

/// An F_q-subspace of L_{n,q} given by an independent basis.
#[derive(Clone, Debug)]
pub struct LinPolyCode {
    field: Arc<Field>,
    basis: Vec<LinPoly>,
}

impl LinPolyCode {
    pub fn new(field: Arc<Field>, basis: Vec<LinPoly>) -> Result<Self> {
        let base = base_of(&field);
        let mats: Vec<Vec<Elem>> = basis.iter().map(|p| p.to_matrix().data).collect();
        if !mats.is_empty() && Matrix::from_rows(&mats).rank(&base) != basis.len() {
            return invalid("basis polynomials are dependent over F_q");
        }
        Ok(LinPolyCode { field, basis })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.field.degree() as usize
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LinPoly] {
        &self.basis
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        self.basis.iter().map(|p| p.to_matrix()).collect()
    }

    pub fn to_matrix_code(&self) -> Result<crate::codes::MatrixCode> {
        let n = self.n();
        let gens: Vec<Vec<Elem>> = self.basis.iter().map(|p| p.to_matrix().data).collect();
        crate::codes::MatrixCode::new(base_of(&self.field), n, n, &gens)
    }

    /// The codeword Σ λ_k B_k.
    pub fn combination(&self, lambdas: &[Elem]) -> LinPoly {
        let mut acc = LinPoly::zero(self.field.clone());
        for (l, b) in lambdas.iter().zip(&self.basis) {
            if *l != 0 {
                acc = acc.add(&b.scale(*l)).expect("same field");
            }
        }
        acc
    }

    /// Every codeword, coefficient vectors in mixed-radix order with the
    /// first basis element most significant.
    pub fn elements(&self) -> Vec<LinPoly> {
        let q = self.field.base_order();
        let k = self.dim();
        (0..q.pow(k as u32))
            .map(|idx| {
                let lambdas: Vec<Elem> =
                    (0..k).map(|t| ((idx / q.pow((k - 1 - t) as u32)) % q) as Elem).collect();
                self.combination(&lambdas)
            })
            .collect()
    }

    pub fn contains(&self, p: &LinPoly) -> bool {
        let base = base_of(&self.field);
        let mut rows: Vec<Vec<Elem>> = self.basis.iter().map(|b| b.to_matrix().data).collect();
        let r0 = Matrix::from_rows(&rows).rank(&base);
        rows.push(p.to_matrix().data);
        Matrix::from_rows(&rows).rank(&base) == r0
    }

    /// Same code as a set.
    pub fn same_as(&self, other: &LinPolyCode) -> bool {
        self.dim() == other.dim() && other.basis.iter().all(|b| self.contains(b))
    }

    /// Every nonzero element invertible and dim = n.
    pub fn is_full_rank_mrd(&self) -> bool {
        self.dim() == self.n() && self.elements().iter().all(|p| p.is_zero() || p.is_invertible())
    }

    pub fn twist(&self, rho: u32) -> LinPolyCode {
        LinPolyCode { field: self.field.clone(), basis: self.basis.iter().map(|p| p.rho_twist(rho)).collect() }
    }

    /// {c ∘ g : c ∈ C}
    pub fn compose_right(&self, g: &LinPoly) -> Result<LinPolyCode> {
        let basis = self.basis.iter().map(|b| b.compose(g)).collect::<Result<Vec<_>>>()?;
        LinPolyCode::new(self.field.clone(), basis)
    }

    pub fn compose_left(&self, f: &LinPoly) -> Result<LinPolyCode> {
        let basis = self.basis.iter().map(|b| f.compose(b)).collect::<Result<Vec<_>>>()?;
        LinPolyCode::new(self.field.clone(), basis)
    }

    pub fn adjoint(&self) -> LinPolyCode {
        LinPolyCode { field: self.field.clone(), basis: self.basis.iter().map(|p| p.adjoint()).collect() }
    }
}

pub(crate) fn base_of(field: &Arc<Field>) -> Arc<Field> {
    field.base().cloned().unwrap_or_else(|| field.clone())
}

/// φ: the code {R_y : y ∈ F_{q^n}}, spanned by R_{t^j}.
pub fn semifield_to_code(s: &Semifield, budget: &Budget) -> Result<LinPolyCode> {
    if !s.is_presemifield(budget)? {
        return precondition("multiplication has zero divisors");
    }
    let q = s.field.base_order() as Elem;
    let basis = (0..s.n as u32).map(|j| s.right_mult(q.pow(j))).collect();
    LinPolyCode::new(s.field.clone(), basis)
}

/// C ∘ g⁻¹ for the first invertible codeword g, so that the result contains x.
pub fn normalize_contains_x(c: &LinPolyCode) -> Result<LinPolyCode> {
    let g = c
        .elements()
        .into_iter()
        .find(|p| !p.is_zero() && p.is_invertible())
        .ok_or_else(|| Error::Precondition("code has no invertible element".into()))?;
    let base = base_of(&c.field);
    let ginv = g.to_matrix().inverse(&base).expect("invertible");
    let ginv = LinPoly::from_matrix(c.field.clone(), &ginv)?;
    c.compose_right(&ginv)
}

/// Ψ: x ⋆ y = L(y)(x), where L(y) is the codeword with L(y)(1) = y.
pub fn code_to_semifield(c: &LinPolyCode) -> Result<Semifield> {
    let field = c.field.clone();
    let n = c.n();
    if c.dim() != n {
        return precondition("code dimension must equal n");
    }
    if !c.contains(&LinPoly::identity(field.clone())) {
        return precondition("code does not contain x");
    }
    if !c.is_full_rank_mrd() {
        return precondition("code is not a full-rank MRD code");
    }
    let base = base_of(&field);
    let q = field.base_order() as Elem;
    // columns: coordinates of B_k(1)
    let mut v = Matrix::zeros(n, n);
    for (k, b) in c.basis.iter().enumerate() {
        for (i, x) in field.coords(b.evaluate(1)).into_iter().enumerate() {
            v.set(i, k, x);
        }
    }
    let vinv = v.inverse(&base).ok_or_else(|| Error::Precondition("evaluation at 1 is not injective".into()))?;
    // L(t^j), then c_ij from interpolation of y ↦ (L(y))_i
    let lt: Vec<LinPoly> = (0..n as u32)
        .map(|j| {
            let lambdas = vinv.mul_vec(&base, &field.coords(q.pow(j)));
            c.combination(&lambdas)
        })
        .collect();
    let moore = MooreSolver::new(field.clone())?;
    let mut coeffs = vec![0; n * n];
    for i in 0..n {
        let vals: Vec<Elem> = lt.iter().map(|p| p.coeffs()[i]).collect();
        let row = moore.from_values(&vals)?;
        for j in 0..n {
            coeffs[i * n + j] = row.coeffs()[j];
        }
    }
    Semifield::new(field, coeffs)
}

/// x ⋆ y = xy − c·x^{q^i}·y^{q^j}, with ℓ = gcd(i, j, n).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedFieldSpec {
    pub q: u64,
    pub n: u32,
    pub l: u32,
    pub i: u32,
    pub j: u32,
    pub c_coords: Vec<Elem>,
}

impl TwistedFieldSpec {
    /// Builds and validates a spec; ℓ is derived from (i, j, n).
    pub fn new(field: &Field, i: u32, j: u32, c: Elem) -> Result<Self> {
        let n = field.degree();
        let (i, j) = (i % n, j % n);
        let l = num_integer::gcd(num_integer::gcd(i, j), n);
        let l = if l == 0 { n } else { l };
        let spec = TwistedFieldSpec { q: field.base_order(), n, l, i, j, c_coords: field.coords(c) };
        spec.validate(field)?;
        Ok(spec)
    }

    pub fn c(&self, field: &Field) -> Result<Elem> {
        field.from_coords(&self.c_coords)
    }

    pub fn validate(&self, field: &Field) -> Result<()> {
        if field.base_order() != self.q || field.degree() != self.n {
            return Err(Error::FieldMismatch);
        }
        let g = num_integer::gcd(num_integer::gcd(self.i % self.n, self.j % self.n), self.n);
        let g = if g == 0 { self.n } else { g };
        if g != self.l {
            return invalid(format!("Fix(alpha) and Fix(beta) meet in F_q^{g}, not F_q^{}", self.l));
        }
        let c = self.c(field)?;
        if field.rel_norm(c, self.l)? == 1 {
            return invalid("relative norm of c is 1");
        }
        Ok(())
    }

    pub fn semifield(&self, field: Arc<Field>) -> Result<Semifield> {
        self.validate(&field)?;
        let c = self.c(&field)?;
        let n = self.n as usize;
        let mut coeffs = vec![0; n * n];
        coeffs[0] = 1;
        let k = self.i as usize * n + self.j as usize;
        coeffs[k] = field.sub(coeffs[k], c);
        Semifield::new(field, coeffs)
    }

    /// Whether C_{c,α,β} is equivalent to C_0 by the closed-form criterion.
    /// c = 0 degenerates to C_0 itself.
    pub fn equiv_to_c0_predicate(&self) -> bool {
        self.c_coords.iter().all(|&x| x == 0)
            || self.i.is_multiple_of(self.n) || self.j.is_multiple_of(self.n) || self.i % self.n == self.j % self.n
    }
}

/// C_{c,α,β} = {xy − cα(x)β(y)}.
pub fn twisted_code(spec: &TwistedFieldSpec, field: Arc<Field>) -> Result<LinPolyCode> {
    let s = spec.semifield(field)?;
    semifield_to_code(&s, &Budget::unlimited())
}

/// C_0 = {xy}.
pub fn c0(field: Arc<Field>) -> LinPolyCode {
    let q = field.base_order() as Elem;
    let n = field.degree();
    let basis = (0..n).map(|j| LinPoly::monomial(field.clone(), q.pow(j), 0)).collect();
    LinPolyCode::new(field, basis).expect("powers of t are independent")
}

/// All valid twisted-field specs over F_{q^n}, including c = 0.
pub fn all_twisted_specs(field: &Field) -> Vec<TwistedFieldSpec> {
    let n = field.degree();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for c in field.elements() {
                if let Ok(s) = TwistedFieldSpec::new(field, i, j, c) {
                    out.push(s);
                }
            }
        }
    }
    out
}
