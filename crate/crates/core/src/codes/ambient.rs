//! Matrix spaces viewed as F_q-vector spaces with a fixed coordinate basis.
//!
//! A code is a subspace of coordinate vectors; the ambient turns coordinates
//! into a matrix and measures its rank. For the Hermitian space the matrix
//! entries live in F_{q^2} and the rank is taken there.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{rank_gf2, rank_in_place};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Full,
    Symmetric,
    Alternating,
    Hermitian,
}

impl std::str::FromStr for Kind {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Kind::Full),
            "symmetric" | "sym" => Ok(Kind::Symmetric),
            "alternating" | "alt" => Ok(Kind::Alternating),
            "hermitian" | "her" => Ok(Kind::Hermitian),
            _ => invalid(format!("unknown matrix space `{s}`")),
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Full => "full",
            Kind::Symmetric => "symmetric",
            Kind::Alternating => "alternating",
            Kind::Hermitian => "hermitian",
        })
    }
}

// rank tables above this many entries are not built
const MAX_TABLE: u64 = 1 << 22;

pub struct Ambient {
    kind: Kind,
    n: usize,
    m: usize,
    base: Arc<Field>,
    mfield: Arc<Field>,
    // one flattened n×m matrix per coordinate; empty for the full space
    basis: Vec<Vec<Elem>>,
    qpow: Vec<u64>,
    table: OnceLock<Option<Vec<u8>>>,
}

impl std::fmt::Debug for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ambient({} {}x{} over F_{})", self.kind, self.n, self.m, self.base.order())
    }
}

impl Ambient {
    pub fn full(base: Arc<Field>, n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return invalid("matrix shape must be positive");
        }
        Ok(Self::build(Kind::Full, n, m, base.clone(), base, Vec::new()))
    }

    pub fn symmetric(base: Arc<Field>, n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("n must be positive");
        }
        let mut basis = Vec::new();
        for a in 0..n {
            for b in a..n {
                let mut e = vec![0; n * n];
                e[a * n + b] = 1;
                e[b * n + a] = 1;
                basis.push(e);
            }
        }
        Ok(Self::build(Kind::Symmetric, n, n, base.clone(), base, basis))
    }

    /// Zero-diagonal skew-symmetric matrices, in every characteristic.
    pub fn alternating(base: Arc<Field>, n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("n must be positive");
        }
        let minus_one = base.neg(1);
        let mut basis = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let mut e = vec![0; n * n];
                e[a * n + b] = 1;
                e[b * n + a] = minus_one;
                basis.push(e);
            }
        }
        Ok(Self::build(Kind::Alternating, n, n, base.clone(), base, basis))
    }

    /// M = M* over F_{q^2}, with F_q-coordinates: diagonal entries, then for
    /// each a < b the entry M_ab in the basis {1, t} of F_{q^2}.
    pub fn hermitian(base: Arc<Field>, n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("n must be positive");
        }
        let ext = Arc::new(Field::extension(base.clone(), 2)?);
        let t = base.order() as Elem;
        let mut basis = Vec::new();
        for a in 0..n {
            let mut e = vec![0; n * n];
            e[a * n + a] = 1;
            basis.push(e);
        }
        for a in 0..n {
            for b in a + 1..n {
                for z in [1, t] {
                    let mut e = vec![0; n * n];
                    e[a * n + b] = z;
                    e[b * n + a] = ext.frobenius(z, 1);
                    basis.push(e);
                }
            }
        }
        Ok(Self::build(Kind::Hermitian, n, n, base, ext, basis))
    }

    pub fn new(kind: Kind, base: Arc<Field>, n: usize, m: usize) -> Result<Self> {
        match kind {
            Kind::Full => Self::full(base, n, m),
            _ if n != m => invalid("restricted spaces are square"),
            Kind::Symmetric => Self::symmetric(base, n),
            Kind::Alternating => Self::alternating(base, n),
            Kind::Hermitian => Self::hermitian(base, n),
        }
    }

    fn build(kind: Kind, n: usize, m: usize, base: Arc<Field>, mfield: Arc<Field>, basis: Vec<Vec<Elem>>) -> Self {
        let dim = if kind == Kind::Full { n * m } else { basis.len() };
        let q = base.order();
        let qpow = (0..dim).map(|i| q.saturating_pow(i as u32)).collect();
        Ambient { kind, n, m, base, mfield, basis, qpow, table: OnceLock::new() }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn matrix_field(&self) -> &Arc<Field> {
        &self.mfield
    }

    pub fn q(&self) -> u64 {
        self.base.order()
    }

    /// Dimension over F_q.
    pub fn dim(&self) -> usize {
        self.qpow.len()
    }

    pub fn basis_matrices(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn to_matrix(&self, coords: &[Elem]) -> Vec<Elem> {
        if self.kind == Kind::Full {
            return coords.to_vec();
        }
        let f = &*self.mfield;
        let mut out = vec![0; self.n * self.m];
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c == 0 {
                continue;
            }
            for (o, &e) in out.iter_mut().zip(b) {
                if e != 0 {
                    *o = f.add(*o, f.mul(*c, e));
                }
            }
        }
        out
    }

    /// Membership test for a matrix given over the matrix field.
    pub fn contains_matrix(&self, mat: &[Elem]) -> bool {
        let n = self.n;
        let f = &*self.mfield;
        match self.kind {
            Kind::Full => mat.iter().all(|&x| (x as u64) < self.base.order()),
            Kind::Symmetric => (0..n).all(|a| (0..n).all(|b| mat[a * n + b] == mat[b * n + a])),
            Kind::Alternating => {
                (0..n).all(|a| mat[a * n + a] == 0 && (0..n).all(|b| mat[a * n + b] == f.neg(mat[b * n + a])))
            }
            Kind::Hermitian => (0..n).all(|a| (0..n).all(|b| mat[a * n + b] == f.frobenius(mat[b * n + a], 1))),
        }
    }

    pub fn index_of(&self, coords: &[Elem]) -> u64 {
        coords.iter().zip(&self.qpow).map(|(&c, &p)| c as u64 * p).sum()
    }

    pub fn coords_of(&self, mut index: u64) -> Vec<Elem> {
        let q = self.q();
        (0..self.dim())
            .map(|_| {
                let d = (index % q) as Elem;
                index /= q;
                d
            })
            .collect()
    }

    pub fn rank(&self, coords: &[Elem]) -> usize {
        let mut scratch = Vec::new();
        self.rank_with(coords, &mut scratch)
    }

    pub fn rank_with(&self, coords: &[Elem], scratch: &mut Vec<Elem>) -> usize {
        let (n, m) = (self.n, self.m);
        if self.kind == Kind::Full && self.base.order() == 2 && m <= 64 {
            let mut rows = [0u64; 64];
            let rows = &mut rows[..n.min(64)];
            if n <= 64 {
                for (i, r) in rows.iter_mut().enumerate() {
                    *r = coords[i * m..(i + 1) * m]
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (j, &b)| acc | ((b as u64) << j));
                }
                return rank_gf2(rows);
            }
        }
        if self.kind == Kind::Full {
            scratch.clear();
            scratch.extend_from_slice(coords);
        } else {
            *scratch = self.to_matrix(coords);
        }
        rank_in_place(&self.mfield, scratch, n, m)
    }

    /// Rank of every vector, indexed by `index_of`, if small enough.
    pub fn rank_table(&self) -> Option<&[u8]> {
        self.table
            .get_or_init(|| {
                let q = self.q();
                let total = q.checked_pow(self.dim() as u32)?;
                if total > MAX_TABLE {
                    return None;
                }
                let t: Vec<u8> = (0..total)
                    .into_par_iter()
                    .map_init(Vec::new, |scratch, i| self.rank_with(&self.coords_of(i), scratch) as u8)
                    .collect();
                Some(t)
            })
            .as_deref()
    }

    pub fn table_feasible(&self) -> bool {
        self.q().checked_pow(self.dim() as u32).is_some_and(|t| t <= MAX_TABLE)
    }

    /// Minimum rank over the nonzero elements of the span of the k rows of
    /// `basis` (each of length `dim`). Stops early and returns as soon as a
    /// rank below `stop_below` is seen; pass 0 for the exact minimum.
    /// Returns `None` for an empty basis.
    pub fn min_rank(&self, basis: &[Elem], k: usize, stop_below: usize, s: &mut MinRankScratch) -> Option<usize> {
        if k == 0 {
            return None;
        }
        let dim = self.dim();
        let q = self.q();
        let table = if s.use_table { self.rank_table() } else { None };
        let mut best = usize::MAX;
        if q == 2 {
            if let Some(t) = table {
                s.bidx.clear();
                s.bidx.extend((0..k).map(|j| self.index_of(&basis[j * dim..(j + 1) * dim])));
                let mut idx = 0u64;
                for step in 1u64..(1u64 << k) {
                    idx ^= s.bidx[step.trailing_zeros() as usize];
                    let r = t[idx as usize] as usize;
                    if r < best {
                        best = r;
                        if best < stop_below || best <= 1 {
                            return Some(best);
                        }
                    }
                }
                return Some(best);
            }
        }
        let f = &*self.base;
        // modular q-ary Gray code: each step adds 1 (mod q) to one digit
        s.cw.clear();
        s.cw.resize(dim, 0);
        s.digits.clear();
        s.digits.resize(k, 0);
        s.counter.clear();
        s.counter.resize(k, 0);
        let qe = q as Elem;
        let deltas: Vec<Elem> = (0..qe).map(|v| f.sub((v + 1) % qe, v)).collect();
        let mut idx = 0u64;
        let total = q.pow(k as u32);
        for _ in 1..total {
            // lowest counter digit that does not roll over
            let mut j = 0;
            while s.counter[j] == qe - 1 {
                s.counter[j] = 0;
                j += 1;
            }
            s.counter[j] += 1;
            let delta = deltas[s.digits[j] as usize];
            s.digits[j] = (s.digits[j] + 1) % qe;
            let row = &basis[j * dim..(j + 1) * dim];
            for i in 0..dim {
                let b = row[i];
                if b != 0 {
                    let old = s.cw[i];
                    let new = f.add(old, f.mul(delta, b));
                    s.cw[i] = new;
                    if table.is_some() {
                        idx = idx - old as u64 * self.qpow[i] + new as u64 * self.qpow[i];
                    }
                }
            }
            let r = match table {
                Some(t) => t[idx as usize] as usize,
                None => self.rank_with(&s.cw, &mut s.mat),
            };
            if r < best {
                best = r;
                if best < stop_below || best <= 1 {
                    return Some(best);
                }
            }
        }
        Some(best)
    }
}

#[derive(Default)]
pub struct MinRankScratch {
    cw: Vec<Elem>,
    digits: Vec<Elem>,
    counter: Vec<Elem>,
    mat: Vec<Elem>,
    bidx: Vec<u64>,
    use_table: bool,
}

impl MinRankScratch {
    pub fn new(use_table: bool) -> Self {
        MinRankScratch { use_table, ..Default::default() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Arc<Field> {
        Arc::new(Field::from_q(q).unwrap())
    }

    #[test]
    fn dimensions() {
        assert_eq!(Ambient::full(f(2), 2, 3).unwrap().dim(), 6);
        assert_eq!(Ambient::symmetric(f(3), 3).unwrap().dim(), 6);
        assert_eq!(Ambient::alternating(f(2), 4).unwrap().dim(), 6);
        assert_eq!(Ambient::hermitian(f(2), 2).unwrap().dim(), 4);
    }

    #[test]
    fn basis_matrices_are_members() {
        for q in [2u64, 3, 4] {
            for kind in [Kind::Symmetric, Kind::Alternating, Kind::Hermitian] {
                let a = Ambient::new(kind, f(q), 3, 3).unwrap();
                for b in a.basis_matrices() {
                    assert!(a.contains_matrix(b), "{kind} q={q}");
                }
            }
        }
    }

    #[test]
    fn gray_code_matches_plain_enumeration() {
        for q in [2u64, 3, 4] {
            let a = Ambient::full(f(q), 2, 3).unwrap();
            let basis: Vec<Elem> = vec![1, 0, 0, 0, 1, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 0, 0, 1];
            let basis: Vec<Elem> = basis.into_iter().map(|x| x % q as Elem).collect();
            let fld = a.base().clone();
            // oracle: all coefficient pairs
            let mut want = usize::MAX;
            for c0 in 0..q as Elem {
                for c1 in 0..q as Elem {
                    for c2 in 0..q as Elem {
                        if (c0, c1, c2) == (0, 0, 0) {
                            continue;
                        }
                        let v: Vec<Elem> = (0..6)
                            .map(|i| {
                                let s = fld.add(fld.mul(c0, basis[i]), fld.mul(c1, basis[6 + i]));
                                fld.add(s, fld.mul(c2, basis[12 + i]))
                            })
                            .collect();
                        want = want.min(a.rank(&v));
                    }
                }
            }
            for table in [false, true] {
                let mut s = MinRankScratch::new(table);
                assert_eq!(a.min_rank(&basis, 3, 0, &mut s), Some(want));
            }
        }
    }
}
