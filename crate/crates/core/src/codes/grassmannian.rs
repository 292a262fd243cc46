//! Deterministic enumeration of the Grassmannian G_q(F_q^N, k).
//!
//! Subspaces are produced as k×N matrices in reduced row echelon form.
//! Order: pivot sets in lexicographic order, then the free entries of the
//! echelon form as a mixed-radix counter whose most significant digit is the
//! first free position in row-major order. Every subspace has a stable index
//! in `0..len()`, so ranges of indices can be handed to separate workers.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{invalid, Result};
use crate::gf::{Elem, Field};
use crate::qcomb::{binom_u, qbinom};

#[derive(Debug, Clone)]
struct Pattern {
    pivots: Vec<usize>,
    // flat indices into the k×N matrix
    free: Vec<usize>,
    start: u128,
    count: u128,
}

#[derive(Debug, Clone)]
pub struct Grassmannian {
    n: usize,
    k: usize,
    q: u64,
    patterns: Vec<Pattern>,
    total: u128,
}

const MAX_PATTERNS: u64 = 5_000_000;

impl Grassmannian {
    /// Fails if the number of subspaces exceeds the budget.
    pub fn new(n: usize, k: usize, q: u64, budget: &Budget) -> Result<Self> {
        if k > n {
            return invalid(format!("k = {k} exceeds N = {n}"));
        }
        budget.check_big(&qbinom(n as i64, k as i64, q))?;
        let npat = binom_u(n as u64, k as u64);
        if npat > BigUint::from(MAX_PATTERNS) {
            return invalid("too many pivot patterns");
        }
        let mut patterns = Vec::with_capacity(npat.to_usize().unwrap_or(0));
        let mut start = 0u128;
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            let mut free = Vec::new();
            for (r, &p) in pivots.iter().enumerate() {
                for c in p + 1..n {
                    if !pivots.contains(&c) {
                        free.push(r * n + c);
                    }
                }
            }
            let count = (q as u128).pow(free.len() as u32);
            patterns.push(Pattern { pivots: pivots.clone(), free, start, count });
            start += count;
            if !next_combination(&mut pivots, n) {
                break;
            }
        }
        Ok(Grassmannian { n, k, q, patterns, total: start })
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    /// The subspace with the given index.
    pub fn decode(&self, index: u128) -> Option<Vec<Elem>> {
        let mut out = None;
        self.for_each_range(index, index + 1, |b| out = Some(b.to_vec()));
        out
    }

    /// Calls `f` on every subspace with index in `start..end`, in order.
    pub fn for_each_range<F: FnMut(&[Elem])>(&self, start: u128, end: u128, mut f: F) {
        let end = end.min(self.total);
        if start >= end {
            return;
        }
        let mut pi = self.patterns.partition_point(|p| p.start + p.count <= start);
        let mut idx = start;
        let mut buf = vec![0 as Elem; self.k * self.n];
        let q = self.q as Elem;
        while idx < end {
            let pat = &self.patterns[pi];
            buf.iter_mut().for_each(|x| *x = 0);
            for (r, &p) in pat.pivots.iter().enumerate() {
                buf[r * self.n + p] = 1;
            }
            // digits of the local offset, least significant last
            let mut off = idx - pat.start;
            let nf = pat.free.len();
            let mut digits = vec![0 as Elem; nf];
            for d in (0..nf).rev() {
                digits[d] = (off % q as u128) as Elem;
                off /= q as u128;
            }
            for (d, &pos) in pat.free.iter().enumerate() {
                buf[pos] = digits[d];
            }
            let stop = end.min(pat.start + pat.count);
            loop {
                f(&buf);
                idx += 1;
                if idx >= stop {
                    break;
                }
                // increment the mixed-radix counter
                let mut d = nf;
                while d > 0 {
                    d -= 1;
                    digits[d] += 1;
                    if digits[d] == q {
                        digits[d] = 0;
                        buf[pat.free[d]] = 0;
                    } else {
                        buf[pat.free[d]] = digits[d];
                        break;
                    }
                }
            }
            pi += 1;
        }
    }

    pub fn for_each<F: FnMut(&[Elem])>(&self, f: F) {
        self.for_each_range(0, self.total, f)
    }

    /// Fixed chunk boundaries; they depend only on `len()`, never on the
    /// number of threads.
    pub fn chunks(&self) -> Vec<(u128, u128)> {
        let size = chunk_size(self.total);
        let mut out = Vec::new();
        let mut s = 0;
        while s < self.total {
            out.push((s, (s + size).min(self.total)));
            s += size;
        }
        out
    }

    /// Counts subspaces satisfying `pred`, splitting the work over rayon.
    /// `make` builds per-chunk scratch state.
    pub fn par_count<S, M, P>(&self, make: M, pred: P) -> u128
    where
        M: Fn() -> S + Sync,
        P: Fn(&mut S, &[Elem]) -> bool + Sync,
    {
        self.chunks()
            .into_par_iter()
            .map(|(a, b)| {
                let mut st = make();
                let mut c = 0u128;
                self.for_each_range(a, b, |basis| {
                    if pred(&mut st, basis) {
                        c += 1;
                    }
                });
                c
            })
            .sum()
    }

    /// Sums a per-subspace weight, in parallel.
    pub fn par_sum<S, M, W>(&self, make: M, weight: W) -> BigUint
    where
        M: Fn() -> S + Sync,
        W: Fn(&mut S, &[Elem]) -> u64 + Sync,
    {
        self.chunks()
            .into_par_iter()
            .map(|(a, b)| {
                let mut st = make();
                let mut c = 0u128;
                self.for_each_range(a, b, |basis| c += weight(&mut st, basis) as u128);
                BigUint::from(c)
            })
            .sum()
    }
}

fn chunk_size(total: u128) -> u128 {
    (total / 256).clamp(1024, 1 << 20)
}

/// Next k-combination of 0..n in lexicographic order.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Whether `v` lies in the row span of a basis given in RREF with the given pivots.
pub fn in_rref_span(f: &Field, basis: &[Elem], pivots: &[usize], n: usize, v: &[Elem]) -> bool {
    let mut w = v.to_vec();
    for (r, &p) in pivots.iter().enumerate() {
        let c = w[p];
        if c != 0 {
            let row = &basis[r * n..(r + 1) * n];
            for j in 0..n {
                w[j] = f.sub(w[j], f.mul(c, row[j]));
            }
        }
    }
    w.iter().all(|&x| x == 0)
}

/// Pivot columns of a matrix already in RREF.
pub fn rref_pivots(basis: &[Elem], k: usize, n: usize) -> Vec<usize> {
    (0..k)
        .map(|r| (0..n).find(|&c| basis[r * n + c] != 0).expect("RREF rows are nonzero"))
        .collect()
}
