//! Brute-force equivalence and automorphisms of codes in L_{n,q}, plus
//! idealizers (linear algebra) and semifield nuclei (exhaustive).
//!
//! Codes are handled through their n×n matrices over F_q. A triple
//! (f, ρ, g) sends C2 to f∘C2^ρ∘g; dimensions agree, so containment of the
//! image basis in C1 decides equality.

use std::collections::HashSet;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{base_of, LinPolyCode, Semifield};
use crate::budget::Budget;
use crate::error::{precondition, Result};
use crate::gf::{Elem, Field, PrimePower};
use crate::linalg::Matrix;

/// All invertible n×n matrices over `f`, in index order.
pub fn gl_elements(f: &Field, n: usize, budget: &Budget) -> Result<Vec<Matrix>> {
    let q = f.order() as u128;
    let total = q.checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    budget.check(total)?;
    let mut out = Vec::new();
    let mut data = vec![0 as Elem; n * n];
    for _ in 0..total {
        let m = Matrix::from_vec(n, n, data.clone());
        if m.rank(f) == n {
            out.push(m);
        }
        for d in data.iter_mut() {
            *d += 1;
            if *d as u128 == q {
                *d = 0;
            } else {
                break;
            }
        }
    }
    Ok(out)
}

fn pack(m: &Matrix, q: u128) -> u128 {
    m.data.iter().rev().fold(0u128, |acc, &x| acc * q + x as u128)
}

/// Every codeword as a matrix, with a hash set for membership.
struct CodeSet {
    members: HashSet<u128>,
    invertible: Vec<Matrix>,
    basis: Vec<Matrix>,
}

impl CodeSet {
    fn new(base: &Field, basis: Vec<Matrix>) -> Result<Self> {
        let q = base.order() as u128;
        let n = basis.first().map_or(0, |m| m.rows);
        let bits = (n * n) as f64 * (q as f64).log2();
        if bits > 127.0 {
            return precondition("matrices too large to pack");
        }
        let k = basis.len();
        let mut members = HashSet::new();
        let mut invertible = Vec::new();
        let mut lambdas = vec![0 as Elem; k];
        for _ in 0..q.pow(k as u32) {
            let mut m = Matrix::zeros(n, n);
            for (l, b) in lambdas.iter().zip(&basis) {
                if *l != 0 {
                    m = m.add(base, &b.scale(base, *l));
                }
            }
            if m.rank(base) == n {
                invertible.push(m.clone());
            }
            members.insert(pack(&m, q));
            // first basis element is the most significant digit
            for d in lambdas.iter_mut().rev() {
                *d += 1;
                if *d as u128 == q {
                    *d = 0;
                } else {
                    break;
                }
            }
        }
        Ok(CodeSet { members, invertible, basis })
    }

    fn contains(&self, m: &Matrix, q: u128) -> bool {
        self.members.contains(&pack(m, q))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivWitness {
    pub f: Matrix,
    pub rho: u32,
    pub g: Matrix,
}

fn aut_order_of(base: &Field) -> u32 {
    PrimePower::from_q(base.order()).map(|pp| pp.h).unwrap_or(1)
}

struct Search<'a> {
    base: &'a Field,
    q: u128,
    gl: Vec<(Matrix, Matrix)>,
    target: CodeSet,
}

impl<'a> Search<'a> {
    fn new(c1: &LinPolyCode, base: &'a Field, budget: &Budget) -> Result<Self> {
        let n = c1.n();
        let gl: Vec<(Matrix, Matrix)> = gl_elements(base, n, budget)?
            .into_iter()
            .map(|m| {
                let inv = m.inverse(base).expect("invertible");
                (m, inv)
            })
            .collect();
        let target = CodeSet::new(base, c1.matrices())?;
        Ok(Search { base, q: base.order() as u128, gl, target })
    }

    fn maps(&self, f: &Matrix, src: &[Matrix], g: &Matrix) -> bool {
        src.iter().all(|b| self.target.contains(&f.mul(self.base, b).mul(self.base, g), self.q))
    }

    /// Candidates (f, g) for a fixed twisted source. With an invertible d0 in
    /// the source, g = d0⁻¹ f⁻¹ c1 for c1 ranging over invertible targets;
    /// otherwise all pairs.
    fn candidates_for_f<'b>(
        &'b self,
        fi: usize,
        d0inv: Option<&'b Matrix>,
    ) -> Box<dyn Iterator<Item = Matrix> + 'b> {
        let (_, finv) = &self.gl[fi];
        match d0inv {
            Some(d) => {
                let m = d.mul(self.base, finv);
                Box::new(self.target.invertible.iter().map(move |c1| m.mul(self.base, c1)))
            }
            None => Box::new(self.gl.iter().map(|(g, _)| g.clone())),
        }
    }

    fn work(&self, src: &CodeSet) -> u128 {
        let per = if src.invertible.is_empty() { self.gl.len() } else { self.target.invertible.len() };
        self.gl.len() as u128 * per as u128
    }
}

/// Whether C1 = f ∘ C2^ρ ∘ g for some invertible f, g and ρ ∈ Aut(F_q).
pub fn is_equivalent_bruteforce(c1: &LinPolyCode, c2: &LinPolyCode, budget: &Budget) -> Result<bool> {
    Ok(find_equivalence(c1, c2, budget)?.is_some())
}

/// The first witness in (ρ, f, c1) order, if any.
pub fn find_equivalence(c1: &LinPolyCode, c2: &LinPolyCode, budget: &Budget) -> Result<Option<EquivWitness>> {
    if c1.field().order() != c2.field().order() || c1.n() != c2.n() {
        return Err(crate::error::Error::FieldMismatch);
    }
    if c1.dim() != c2.dim() {
        return Ok(None);
    }
    let base = base_of(c1.field());
    let search = Search::new(c1, &base, budget)?;
    let h = aut_order_of(&base);
    for rho in 0..h {
        let src = CodeSet::new(&base, c2.twist(rho).matrices())?;
        if src.invertible.is_empty() != search.target.invertible.is_empty()
            || src.members.len() != search.target.members.len()
        {
            return Ok(None);
        }
        budget.check(search.work(&src) * h as u128)?;
        let d0inv = src.invertible.first().map(|d| d.inverse(&base).expect("invertible"));
        let hit = (0..search.gl.len()).into_par_iter().find_map_first(|fi| {
            let f = &search.gl[fi].0;
            search
                .candidates_for_f(fi, d0inv.as_ref())
                .find(|g| search.maps(f, &src.basis, g))
                .map(|g| EquivWitness { f: f.clone(), rho, g })
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// |Aut(C)|: the number of triples (f, ρ, g) with f ∘ C^ρ ∘ g = C.
pub fn aut_group_size_bruteforce(c: &LinPolyCode, budget: &Budget) -> Result<BigUint> {
    let base = base_of(c.field());
    let search = Search::new(c, &base, budget)?;
    let h = aut_order_of(&base);
    let mut total = 0u128;
    for rho in 0..h {
        let src = CodeSet::new(&base, c.twist(rho).matrices())?;
        budget.check(search.work(&src) * h as u128)?;
        let d0inv = src.invertible.first().map(|d| d.inverse(&base).expect("invertible"));
        total += (0..search.gl.len())
            .into_par_iter()
            .map(|fi| {
                let f = &search.gl[fi].0;
                search.candidates_for_f(fi, d0inv.as_ref()).filter(|g| search.maps(f, &src.basis, g)).count() as u128
            })
            .sum::<u128>();
    }
    Ok(BigUint::from(total))
}

/// Class labels for a list of codes: codes share a label iff equivalent.
/// Idealizer dimensions are compared first, since equivalent codes have
/// conjugate idealizers.
pub fn classify(codes: &[LinPolyCode], budget: &Budget) -> Result<Vec<usize>> {
    let mut reps: Vec<(usize, (usize, usize))> = Vec::new();
    let mut labels = Vec::with_capacity(codes.len());
    for (idx, c) in codes.iter().enumerate() {
        let id = idealizers(c);
        let inv = (id.left.len(), id.right.len());
        let mut label = None;
        for (ri, (rep, rinv)) in reps.iter().enumerate() {
            if *rinv == inv && is_equivalent_bruteforce(&codes[*rep], c, budget)? {
                label = Some(ri);
                break;
            }
        }
        labels.push(label.unwrap_or_else(|| {
            reps.push((idx, inv));
            reps.len() - 1
        }));
    }
    Ok(labels)
}

/// Bases (as n×n matrices over F_q) of the four subalgebras.
#[derive(Debug, Clone)]
pub struct Idealizers {
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
    pub centralizer: Vec<Matrix>,
    pub center: Vec<Matrix>,
}

impl Idealizers {
    /// (log_q |I_l|, log_q |I_r|, log_q |Cent|, log_q |Z|)
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (self.left.len(), self.right.len(), self.centralizer.len(), self.center.len())
    }
}

/// Solves the linear conditions f∘C ⊆ C, C∘f ⊆ C and f∘g = g∘f for the
/// unknown matrix of f.
pub fn idealizers(c: &LinPolyCode) -> Idealizers {
    let base = base_of(c.field());
    let f = &*base;
    let n = c.n();
    let nn = n * n;
    let basis = c.matrices();
    let gen = Matrix::from_rows(&basis.iter().map(|m| m.data.clone()).collect::<Vec<_>>());
    // rows of the parity check span the dual of C
    let parity = gen.nullspace(f);
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut cent = Vec::new();
    for b in &basis {
        for h in &parity {
            // h · vec(F B) = Σ_{r,s} F_rs Σ_c h_rc B_sc
            let mut row = vec![0 as Elem; nn];
            for r in 0..n {
                for s in 0..n {
                    row[r * n + s] = (0..n).fold(0, |a, col| f.add(a, f.mul(h[r * n + col], b.get(s, col))));
                }
            }
            left.push(row);
            // h · vec(B F) = Σ_{s,c} F_sc Σ_r h_rc B_rs
            let mut row = vec![0 as Elem; nn];
            for s in 0..n {
                for col in 0..n {
                    row[s * n + col] = (0..n).fold(0, |a, r| f.add(a, f.mul(h[r * n + col], b.get(r, s))));
                }
            }
            right.push(row);
        }
        // (F B − B F)_rc = 0
        for r in 0..n {
            for col in 0..n {
                let mut row = vec![0 as Elem; nn];
                for s in 0..n {
                    row[r * n + s] = f.add(row[r * n + s], b.get(s, col));
                    row[s * n + col] = f.sub(row[s * n + col], b.get(r, s));
                }
                cent.push(row);
            }
        }
    }
    let solve = |rows: &[Vec<Elem>]| -> Vec<Matrix> {
        let sol = if rows.is_empty() {
            (0..nn).map(|i| (0..nn).map(|j| (i == j) as Elem).collect()).collect()
        } else {
            Matrix::from_rows(rows).nullspace(f)
        };
        sol.into_iter().map(|v| Matrix::from_vec(n, n, v)).collect()
    };
    let mut both = left.clone();
    both.extend(cent.iter().cloned());
    Idealizers { left: solve(&left), right: solve(&right), centralizer: solve(&cent), center: solve(&both) }
}

/// Sizes aside, the actual element sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nuclei {
    pub left: Vec<Elem>,
    pub middle: Vec<Elem>,
    pub right: Vec<Elem>,
    pub nucleus: Vec<Elem>,
    pub center: Vec<Elem>,
}

/// Exhaustive associativity tests over all triples.
pub fn nuclei(s: &Semifield, budget: &Budget) -> Result<Nuclei> {
    let o = s.field().order() as usize;
    budget.check(3 * (o as u128).pow(3))?;
    let t = s.table();
    let m = |x: Elem, y: Elem| t[x as usize * o + y as usize];
    let assoc = |x: Elem, y: Elem, z: Elem| m(x, m(y, z)) == m(m(x, y), z);
    let all = 0..o as Elem;
    let pick = |pred: &(dyn Fn(Elem) -> bool + Sync)| -> Vec<Elem> {
        (0..o as Elem).into_par_iter().filter(|&a| pred(a)).collect()
    };
    let left = pick(&|x| all.clone().all(|y| all.clone().all(|z| assoc(x, y, z))));
    let middle = pick(&|y| all.clone().all(|x| all.clone().all(|z| assoc(x, y, z))));
    let right = pick(&|z| all.clone().all(|x| all.clone().all(|y| assoc(x, y, z))));
    let nucleus: Vec<Elem> =
        left.iter().copied().filter(|a| middle.contains(a) && right.contains(a)).collect();
    let center = nucleus.iter().copied().filter(|&a| all.clone().all(|y| m(a, y) == m(y, a))).collect();
    Ok(Nuclei { left, middle, right, nucleus, center })
}
