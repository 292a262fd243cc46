//! Point sets, distinguishing subspaces, average densities and the
//! hyperplane/block-code bridge.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::codes::grassmannian::{in_rref_span, next_combination, rref_pivots, Grassmannian};
use crate::error::{invalid, precondition, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{span_rank, Matrix};
use crate::qcomb::{binom, binom_u, qbinom, qpow, rat_int, ratio, to_f64, Rounding};

/// Scale so the first nonzero coordinate is 1.
pub fn canonical(f: &Field, v: &[Elem]) -> Option<Vec<Elem>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = f.inv(lead)?;
    Some(v.iter().map(|&x| f.mul(inv, x)).collect())
}

#[derive(Debug, Clone)]
pub struct PointSet {
    field: Arc<Field>,
    n: usize,
    points: BTreeSet<Vec<Elem>>,
    span: usize,
}

impl PointSet {
    pub fn new(field: Arc<Field>, n: usize, vectors: &[Vec<Elem>]) -> Result<Self> {
        let mut points = BTreeSet::new();
        for v in vectors {
            if v.len() != n {
                return invalid(format!("point of length {} in F_q^{n}", v.len()));
            }
            match canonical(&field, v) {
                Some(c) => {
                    points.insert(c);
                }
                None => return invalid("zero vector is not a point"),
            }
        }
        if points.is_empty() {
            return invalid("point set is empty");
        }
        let span = span_rank(&field, &points.iter().cloned().collect::<Vec<_>>());
        Ok(PointSet { field, n, points, span })
    }

    /// Nonzero matrices of rank at most r in F_q^{rows×cols}, flattened row-major.
    pub fn rank_ball(field: Arc<Field>, rows: usize, cols: usize, r: usize, budget: &Budget) -> Result<Self> {
        let n = rows * cols;
        let q = field.order();
        budget.check((q as u128).pow(n as u32))?;
        let mut pts = Vec::new();
        for v in projective_points(&field, n) {
            let rk = Matrix::from_vec(rows, cols, v.clone()).rank(&field);
            if rk <= r {
                pts.push(v);
            }
        }
        PointSet::new(field, n, &pts)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// dim ⟨P⟩
    pub fn span_dim(&self) -> usize {
        self.span
    }

    pub fn points(&self) -> impl Iterator<Item = &Vec<Elem>> {
        self.points.iter()
    }
}

/// Canonical representatives of all points of PG(n−1, q), in increasing
/// order of the vector read as a base-q number with the first coordinate
/// most significant.
pub fn projective_points(f: &Field, n: usize) -> Vec<Vec<Elem>> {
    let q = f.order() as Elem;
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let mut v = vec![0 as Elem; n];
        v[lead] = 1;
        for idx in 0..(q as u64).pow(free as u32) {
            let mut x = idx;
            for j in (lead + 1..n).rev() {
                v[j] = (x % q as u64) as Elem;
                x /= q as u64;
            }
            out.push(v.clone());
        }
    }
    out
}

/// Whether no point of P lies in the row space of `v` (k×N, any form).
pub fn distinguishes(v: &Matrix, p: &PointSet) -> Result<bool> {
    if v.cols != p.n {
        return invalid("subspace and point set live in different spaces");
    }
    let f = &*p.field;
    let (r, piv) = v.rref(f);
    let k = piv.len();
    let basis = &r.data[..k * v.cols];
    Ok(p.points.iter().all(|pt| !in_rref_span(f, basis, &piv, v.cols, pt)))
}

/// Exact fraction of k-subspaces of F_q^N that distinguish P.
pub fn delta_bruteforce(k: usize, p: &PointSet, budget: &Budget) -> Result<BigRational> {
    let n = p.n;
    let q = p.field.order();
    let g = Grassmannian::new(n, k, q, budget)?;
    let f = &*p.field;
    let pts: Vec<&Vec<Elem>> = p.points.iter().collect();
    let hits = g.par_count(
        || (),
        |_, basis| {
            let piv = rref_pivots(basis, k, n);
            pts.iter().all(|pt| !in_rref_span(f, basis, &piv, n, pt))
        },
    );
    Ok(ratio(BigUint::from(hits), qbinom(n as i64, k as i64, q)))
}

fn check_ell(n: u64, ell: u64, q: u64) -> Result<BigUint> {
    let pts = (qpow(q, n) - 1u32) / (q - 1);
    if ell < 1 || BigUint::from(ell) > pts {
        return invalid(format!("ell = {ell} outside 1..=(q^N-1)/(q-1)"));
    }
    Ok(pts)
}

/// C((q^N−q^k)/(q−1), ℓ) / C((q^N−1)/(q−1), ℓ)
pub fn avg_density_formula(n: u64, k: u64, ell: u64, q: u64) -> Result<BigRational> {
    if k > n {
        return invalid("k exceeds N");
    }
    let all = check_ell(n, ell, q)?;
    let avoid = (qpow(q, n) - qpow(q, k)) / (q - 1);
    Ok(ratio(binom(&avoid, ell), binom(&all, ell)))
}

/// Indices of points (as in `projective_points`) lying in each k-subspace.
struct PointLattice {
    field: Field,
    n: usize,
    points: Vec<Vec<Elem>>,
}

impl PointLattice {
    fn new(n: usize, q: u64) -> Result<Self> {
        let field = Field::from_q(q)?;
        let points = projective_points(&field, n);
        if points.len() > 128 {
            return invalid("more than 128 points");
        }
        Ok(PointLattice { field, n, points })
    }

    fn mask_of(&self, basis: &[Elem], k: usize) -> u128 {
        let piv = rref_pivots(basis, k, self.n);
        self.points
            .iter()
            .enumerate()
            .filter(|(_, p)| in_rref_span(&self.field, basis, &piv, self.n, p))
            .fold(0u128, |m, (i, _)| m | 1 << i)
    }

    fn subspace_masks(&self, k: usize, budget: &Budget) -> Result<Vec<u128>> {
        let g = Grassmannian::new(self.n, k, self.field.order(), budget)?;
        let mut out = Vec::new();
        g.for_each(|b| out.push(self.mask_of(b, k)));
        Ok(out)
    }

    fn for_each_subset<F: FnMut(&[usize], u128)>(&self, ell: usize, mut f: F) {
        let np = self.points.len();
        if ell > np {
            return;
        }
        let mut c: Vec<usize> = (0..ell).collect();
        loop {
            let m = c.iter().fold(0u128, |m, &i| m | 1 << i);
            f(&c, m);
            if !next_combination(&mut c, np) {
                break;
            }
        }
    }
}

/// Mean of δ over all ℓ-subsets, by direct enumeration.
pub fn avg_density_exhaustive(n: usize, k: usize, ell: usize, q: u64, budget: &Budget) -> Result<BigRational> {
    let lat = PointLattice::new(n, q)?;
    check_ell(n as u64, ell as u64, q)?;
    let subsets = binom_u(lat.points.len() as u64, ell as u64);
    let spaces = qbinom(n as i64, k as i64, q);
    budget.check_big(&(&subsets * &spaces))?;
    let masks = lat.subspace_masks(k, budget)?;
    let mut total = BigUint::zero();
    lat.for_each_subset(ell, |_, pm| {
        total += masks.iter().filter(|&&v| v & pm == 0).count();
    });
    Ok(ratio(total, subsets * spaces))
}

/// λ_q(N, s, ℓ, ρ) by Möbius inversion on the subspace lattice.
pub fn lambda(n: u64, s: u64, ell: u64, rho: u64, q: u64) -> Result<BigUint> {
    if !(2 <= rho && rho <= n) {
        return invalid("need 2 <= rho <= N");
    }
    if s > n {
        return invalid("need s <= N");
    }
    let maxl = (qpow(q, rho) - 1u32) / (q - 1);
    if ell < rho || BigUint::from(ell) > maxl {
        return invalid("need rho <= ell <= (q^rho-1)/(q-1)");
    }
    let (ni, si, ri) = (n as i64, s as i64, rho as i64);
    let mut acc = BigInt::zero();
    for i in 0..=ri {
        let outer = BigInt::from(qbinom(ni - i, ri - i, q)) * BigInt::from(qpow(q, binom_u((ri - i) as u64, 2).to_u64().unwrap()));
        let mut inner = BigInt::zero();
        // t > i is killed by ⟦N−s, i−t⟧ = 0
        for t in 0..=si.min(i) {
            let pts = (qpow(q, i as u64) - qpow(q, t as u64)) / (q - 1);
            let term = binom(&pts, ell)
                * qbinom(si, t, q)
                * qbinom(ni - si, i - t, q)
                * qpow(q, ((si - t) * (i - t)) as u64);
            inner += BigInt::from(term);
        }
        let term = outer * inner;
        if (ri - i) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    assert!(!acc.is_negative(), "a count cannot be negative");
    Ok(acc.to_biguint().expect("nonnegative"))
}

/// Point sets of size ℓ and rank ρ avoiding span(e_1, …, e_s), counted directly.
pub fn lambda_exhaustive(n: usize, s: usize, ell: usize, rho: usize, q: u64, budget: &Budget) -> Result<BigUint> {
    let lat = PointLattice::new(n, q)?;
    budget.check_big(&binom_u(lat.points.len() as u64, ell as u64))?;
    let mut v = vec![0 as Elem; s * n];
    for i in 0..s {
        v[i * n + i] = 1;
    }
    let vmask = if s == 0 { 0 } else { lat.mask_of(&v, s) };
    let mut count = 0u64;
    lat.for_each_subset(ell, |idx, pm| {
        if pm & vmask == 0 {
            let vecs: Vec<Vec<Elem>> = idx.iter().map(|&i| lat.points[i].clone()).collect();
            if span_rank(&lat.field, &vecs) == rho {
                count += 1;
            }
        }
    });
    Ok(BigUint::from(count))
}

/// λ_q(N,k,ℓ,ρ) / λ_q(N,0,ℓ,ρ)
pub fn avg_density_rank_formula(n: u64, k: u64, ell: u64, rho: u64, q: u64) -> Result<BigRational> {
    let den = lambda(n, 0, ell, rho, q)?;
    if den.is_zero() {
        return precondition("no point sets with this size and rank");
    }
    Ok(ratio(lambda(n, k, ell, rho, q)?, den))
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub rho: u64,
    pub density_num: String,
    pub density_den: String,
    pub density_float_4dp: String,
}

/// Average densities for (q, N, k) = (2, 10, 6) and ℓ = 31, ρ = 10 down to 5.
/// Decimals are truncated, as in the published table.
pub fn critical_example_table(mode: Rounding) -> Result<Vec<TableRow>> {
    (5..=10u64)
        .rev()
        .map(|rho| {
            let d = avg_density_rank_formula(10, 6, 31, rho, 2)?;
            Ok(TableRow {
                rho,
                density_num: d.numer().to_string(),
                density_den: d.denom().to_string(),
                density_float_4dp: crate::qcomb::decimal(&d, 4, mode),
            })
        })
        .collect()
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut s = String::from("rho,density_num,density_den,density_float_4dp\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{}\n", r.rho, r.density_num, r.density_den, r.density_float_4dp));
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prop52Case {
    /// dim P = 2, |P| = i
    Line,
    /// i independent points
    Independent,
}

/// Hyperplane-distinguisher density for a point set on a line or in general position.
pub fn prop52_formula(n: u64, i: u64, q: u64, case: Prop52Case) -> Result<BigRational> {
    let den = qpow(q, n) - 1u32;
    match case {
        Prop52Case::Line => {
            if !(2 <= i && i <= q + 1) || n < 2 {
                return invalid("need 2 <= i <= q+1 and N >= 2");
            }
            let num = BigUint::from(q + 1 - i) * (q - 1) * qpow(q, n - 2);
            Ok(ratio(num, den))
        }
        Prop52Case::Independent => {
            if i < 1 || i > n - 1 {
                return invalid("need 1 <= i <= N-1");
            }
            Ok(ratio(qpow(q - 1, i) * qpow(q, n - i), den))
        }
    }
}

/// (q−1)^i q^{N−i} versus (q+1−i)(q−1)q^{N−2}, as signed integers.
pub fn toshow_sides(n: u64, i: u64, q: u64) -> (BigInt, BigInt) {
    let lhs = BigInt::from(qpow(q - 1, i) * qpow(q, n - i));
    let rhs = (BigInt::from(q + 1) - i) * BigInt::from(q - 1) * BigInt::from(qpow(q, n - 2));
    (lhs, rhs)
}

/// A block code given by a full-row-rank N×ℓ generator.
#[derive(Debug, Clone)]
pub struct BlockCode {
    field: Arc<Field>,
    generator: Matrix,
}

impl BlockCode {
    pub fn new(field: Arc<Field>, generator: Matrix) -> Result<Self> {
        if generator.rank(&field) != generator.rows {
            return invalid("generator does not have full row rank");
        }
        Ok(BlockCode { field, generator })
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn length(&self) -> usize {
        self.generator.cols
    }

    pub fn dim(&self) -> usize {
        self.generator.rows
    }

    /// W_0..=W_ℓ by enumerating all q^N codewords.
    pub fn weight_distribution(&self, budget: &Budget) -> Result<Vec<BigUint>> {
        let f = &*self.field;
        let (n, l) = (self.dim(), self.length());
        let q = f.order();
        budget.check((q as u128).pow(n as u32) * l as u128)?;
        let mut w = vec![0u64; l + 1];
        let mut x = vec![0 as Elem; n];
        let mut word = vec![0 as Elem; l];
        for _ in 0..q.pow(n as u32) {
            word.iter_mut().for_each(|c| *c = 0);
            for (r, &xr) in x.iter().enumerate() {
                if xr != 0 {
                    for (c, wc) in word.iter_mut().enumerate() {
                        *wc = f.add(*wc, f.mul(xr, self.generator.get(r, c)));
                    }
                }
            }
            w[word.iter().filter(|&&c| c != 0).count()] += 1;
            for d in x.iter_mut() {
                *d += 1;
                if *d as u64 == q {
                    *d = 0;
                } else {
                    break;
                }
            }
        }
        Ok(w.into_iter().map(BigUint::from).collect())
    }

    /// W_ℓ / (q^N − 1)
    pub fn hyperplane_density(&self, budget: &Budget) -> Result<BigRational> {
        let w = self.weight_distribution(budget)?;
        Ok(ratio(w[self.length()].clone(), qpow(self.field.order(), self.dim() as u64) - 1u32))
    }
}

/// Generator whose columns are the canonical point representatives.
pub fn code_from_pointset(p: &PointSet) -> Result<BlockCode> {
    if p.span < p.n {
        return invalid("point set does not span the ambient space");
    }
    let l = p.len();
    let mut g = Matrix::zeros(p.n, l);
    for (c, pt) in p.points.iter().enumerate() {
        for (r, &x) in pt.iter().enumerate() {
            g.set(r, c, x);
        }
    }
    BlockCode::new(p.field.clone(), g)
}

/// (q−1)/(q^N−1) Σ_{j<N} (−1)^j C(ℓ−1, j) q^{N−j−1}
pub fn mds_arc_density(n: u64, ell: u64, q: u64) -> Result<BigRational> {
    if ell < 2 || n < 1 || n > ell {
        return invalid("need 2 <= ell and 1 <= N <= ell");
    }
    let mut s = BigInt::zero();
    for j in 0..n {
        let t = BigInt::from(binom_u(ell - 1, j) * qpow(q, n - j - 1));
        if j % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    Ok(BigRational::new(s * BigInt::from(q - 1), BigInt::from(qpow(q, n) - 1u32)))
}

/// Points (1, t, …, t^{N−1}) for t ∈ F_q in element order, then (0, …, 0, 1);
/// the first ℓ of them.
pub fn moment_curve_arc(field: Arc<Field>, n: usize, ell: usize) -> Result<PointSet> {
    let q = field.order() as usize;
    if n < 2 || ell > q + 1 || ell < n {
        return invalid("need N >= 2 and N <= ell <= q+1");
    }
    let mut pts: Vec<Vec<Elem>> =
        field.elements().map(|t| (0..n as u64).map(|e| field.pow(t, e)).collect()).collect();
    let mut inf = vec![0; n];
    inf[n - 1] = 1;
    pts.push(inf);
    pts.truncate(ell);
    PointSet::new(field, n, &pts)
}

/// Whether every N points of P span F_q^N.
pub fn is_arc(p: &PointSet) -> bool {
    let pts: Vec<Vec<Elem>> = p.points.iter().cloned().collect();
    let n = p.n;
    if pts.len() < n {
        return p.span == pts.len();
    }
    let mut c: Vec<usize> = (0..n).collect();
    loop {
        let sel: Vec<Vec<Elem>> = c.iter().map(|&i| pts[i].clone()).collect();
        if span_rank(&p.field, &sel) < n {
            return false;
        }
        if !next_combination(&mut c, pts.len()) {
            return true;
        }
    }
}

fn check_511(n: u64, ell: u64, q: u64) -> Result<()> {
    if n < 2 || ell < 2 || ell + 1 > q {
        return invalid("need N >= 2 and 2 <= ell <= q-1");
    }
    Ok(())
}

/// (q−1)²/(q^N−1) Σ_{j≤N−2} (−1)^j C(ℓ−2, j) q^{N−j−2}
pub fn example511_density(n: u64, ell: u64, q: u64) -> Result<BigRational> {
    check_511(n, ell, q)?;
    let mut s = BigInt::zero();
    for j in 0..=n - 2 {
        let t = BigInt::from(binom_u(ell - 2, j) * qpow(q, n - j - 2));
        if j % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    let c = BigInt::from(q - 1);
    Ok(BigRational::new(s * &c * &c, BigInt::from(qpow(q, n) - 1u32)))
}

/// (q−1)/(q^N−1) (−1)^N C(ℓ−2, N−1)
pub fn difference_term(n: u64, ell: u64, q: u64) -> Result<BigRational> {
    check_511(n, ell, q)?;
    let b = BigInt::from(binom_u(ell - 2, n - 1) * (q - 1));
    let b = if n.is_multiple_of(2) { b } else { -b };
    Ok(BigRational::new(b, BigInt::from(qpow(q, n) - 1u32)))
}

/// An arc of ℓ−1 points in the first N−1 coordinates plus e_N.
pub fn example511_pointset(field: Arc<Field>, n: usize, ell: usize) -> Result<PointSet> {
    let arc = moment_curve_arc(field.clone(), n - 1, ell - 1)?;
    let mut pts: Vec<Vec<Elem>> = arc
        .points()
        .map(|p| {
            let mut v = p.clone();
            v.push(0);
            v
        })
        .collect();
    let mut e = vec![0; n];
    e[n - 1] = 1;
    pts.push(e);
    PointSet::new(field, n, &pts)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AvgRegime {
    /// N, k fixed, ℓ ~ q^s, q → ∞
    QLarge { n: u64, k: u64, s: u64 },
    /// N = mn, k = mk', ℓ ~ ℓ' q^{mr}, m → ∞
    MLarge { n: u64, k_prime: u64, r: u64, ell_prime: f64 },
}

/// Limit expression of the average density at a given q (and m).
pub fn avg_asymptotics(regime: AvgRegime, q: u64, m: u64) -> Result<f64> {
    let qf = q as f64;
    match regime {
        AvgRegime::QLarge { n, k, s } => {
            if !(1 <= s && s + 1 < n) {
                return invalid("need 1 <= s < N-1");
            }
            Ok((-qf.powi((k + s) as i32 - n as i32)).exp())
        }
        AvgRegime::MLarge { n, k_prime, r, ell_prime } => {
            if !(1 <= k_prime && k_prime < n && 1 <= r && r < n) {
                return invalid("need 1 <= k', r < n");
            }
            let e = m as i64 * (k_prime as i64 + r as i64 - n as i64);
            Ok((-ell_prime * qf.powi(e as i32)).exp())
        }
    }
}

/// Limit of the average density for the rank-metric ball of radius d−1:
/// q → ∞ gives exp(−q^{d(n−d+2)−n−2}), m → ∞ gives exp(−⟦n, d−1⟧/(q−1)).
pub fn ball_avg_limit(n: u64, d: u64, q: u64, q_large: bool) -> Result<f64> {
    if !(1 <= d && d <= n) {
        return invalid("need 1 <= d <= n");
    }
    if q_large {
        let e = (d * (n - d + 2)) as i64 - n as i64 - 2;
        Ok((-(q as f64).powi(e as i32)).exp())
    } else {
        let b = to_f64(&rat_int(qbinom(n as i64, d as i64 - 1, q)));
        Ok((-b / (q as f64 - 1.0)).exp())
    }
}

/// Σ_{j<N} (−1)^j / j!
pub fn alt_factorial_sum(n: u64) -> f64 {
    let mut s = 0.0;
    let mut fact = 1.0;
    for j in 0..n {
        if j > 0 {
            fact *= j as f64;
        }
        s += if j % 2 == 0 { 1.0 } else { -1.0 } / fact;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcomb::rat_i;

    fn f(q: u64) -> Arc<Field> {
        Arc::new(Field::from_q(q).unwrap())
    }

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn projective_line() {
        let f2 = f(2);
        let pts = projective_points(&f2, 2);
        assert_eq!(pts, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        let p = PointSet::new(f2.clone(), 2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let v = Matrix::from_vec(1, 2, vec![1, 0]);
        assert!(distinguishes(&v, &p).unwrap());
        let w = Matrix::from_vec(1, 2, vec![1, 1]);
        assert!(!distinguishes(&w, &p).unwrap());
        assert_eq!(p.span_dim(), 2);
        // scaling collapses duplicates
        let f3 = f(3);
        let p = PointSet::new(f3, 2, &[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn deltas() {
        let f2 = f(2);
        let b = Budget::unlimited();
        let one_pt = PointSet::new(f2.clone(), 2, &[vec![1, 0]]).unwrap();
        assert_eq!(delta_bruteforce(1, &one_pt, &b).unwrap(), frac(2, 3));
        let all = PointSet::new(f2.clone(), 3, &projective_points(&f2, 3)).unwrap();
        for k in 1..=3 {
            assert!(delta_bruteforce(k, &all, &b).unwrap().is_zero());
        }
        assert_eq!(delta_bruteforce(0, &all, &b).unwrap(), rat_i(1));
    }

    #[test]
    fn average_formula() {
        assert_eq!(avg_density_formula(2, 1, 1, 2).unwrap(), frac(2, 3));
        // 6 of the 7 points avoid a fixed line through the origin
        assert_eq!(avg_density_formula(3, 1, 2, 2).unwrap(), frac(5, 7));
        assert!(avg_density_formula(3, 2, 5, 2).unwrap().is_zero());
        assert!(avg_density_formula(2, 1, 4, 2).is_err());
        let b = Budget::unlimited();
        assert_eq!(avg_density_exhaustive(3, 1, 2, 2, &b).unwrap(), frac(5, 7));
    }

    #[test]
    fn lambda_small() {
        assert_eq!(lambda(2, 0, 2, 2, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(lambda(2, 1, 2, 2, 2).unwrap(), BigUint::from(1u32));
        let b = Budget::unlimited();
        assert_eq!(lambda_exhaustive(2, 1, 2, 2, 2, &b).unwrap(), BigUint::from(1u32));
        assert_eq!(lambda_exhaustive(3, 1, 3, 3, 2, &b).unwrap(), lambda(3, 1, 3, 3, 2).unwrap());
    }

    #[test]
    fn prop52() {
        assert!(prop52_formula(3, 3, 2, Prop52Case::Line).unwrap().is_zero());
        assert_eq!(prop52_formula(3, 2, 2, Prop52Case::Independent).unwrap(), frac(2, 7));
        let p = PointSet::new(f(2), 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(delta_bruteforce(2, &p, &Budget::unlimited()).unwrap(), frac(2, 7));
    }

    #[test]
    fn block_codes() {
        let f2 = f(2);
        let b = Budget::unlimited();
        let p = PointSet::new(f2.clone(), 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let c = code_from_pointset(&p).unwrap();
        assert_eq!(c.weight_distribution(&b).unwrap()[3], BigUint::from(1u32));
        assert_eq!(c.hyperplane_density(&b).unwrap(), frac(1, 7));
        assert_eq!(delta_bruteforce(2, &p, &b).unwrap(), frac(1, 7));
        let line = PointSet::new(f2.clone(), 2, &projective_points(&f2, 2)).unwrap();
        assert!(code_from_pointset(&line).unwrap().hyperplane_density(&b).unwrap().is_zero());
        let not_spanning = PointSet::new(f2, 3, &[vec![1, 0, 0]]).unwrap();
        assert!(code_from_pointset(&not_spanning).is_err());
    }

    #[test]
    fn arcs() {
        assert!(mds_arc_density(2, 3, 2).unwrap().is_zero());
        assert_eq!(mds_arc_density(2, 2, 3).unwrap(), frac(1, 2));
        let b = Budget::unlimited();
        for (q, n, l) in [(3u64, 2usize, 2usize), (4, 3, 5), (5, 3, 6), (5, 4, 5), (7, 3, 4)] {
            let arc = moment_curve_arc(f(q), n, l).unwrap();
            assert!(is_arc(&arc));
            assert_eq!(delta_bruteforce(n - 1, &arc, &b).unwrap(), mds_arc_density(n as u64, l as u64, q).unwrap());
        }
        let lim = alt_factorial_sum(4);
        let v = to_f64(&mds_arc_density(4, 102, 101).unwrap());
        assert!((v - lim).abs() / lim < 0.05);
    }

    #[test]
    fn example_511() {
        let b = Budget::unlimited();
        for q in [3u64, 4, 5, 7, 8, 9] {
            for n in 2..=6u64 {
                for l in 2..q {
                    let gap = example511_density(n, l, q).unwrap();
                    if n <= l {
                        let d = gap.clone() - mds_arc_density(n, l, q).unwrap();
                        assert_eq!(d, difference_term(n, l, q).unwrap(), "q={q} n={n} l={l}");
                    }
                    let diff = difference_term(n, l, q).unwrap();
                    assert_eq!(diff.is_positive(), n % 2 == 0 && l > n);
                }
            }
        }
        // the construction itself
        for (q, n, l) in [(5u64, 3usize, 4usize), (7, 4, 6), (4, 3, 3)] {
            let p = example511_pointset(f(q), n, l).unwrap();
            assert_eq!(p.len(), l);
            assert_eq!(delta_bruteforce(n - 1, &p, &b).unwrap(), example511_density(n as u64, l as u64, q).unwrap());
        }
    }

    #[test]
    fn limits() {
        assert!((ball_avg_limit(2, 2, 5, true).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
        let q = 3.0f64;
        assert!((ball_avg_limit(2, 2, 3, false).unwrap() - (-(q + 1.0) / (q - 1.0)).exp()).abs() < 1e-15);
        let hyper = AvgRegime::QLarge { n: 3, k: 2, s: 1 };
        assert!((avg_asymptotics(hyper, 7, 0).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
        assert!(avg_asymptotics(AvgRegime::QLarge { n: 2, k: 1, s: 1 }, 2, 0).is_err());
    }
}
