//! Dense linear algebra over a `Field`.
//!
//! Matrices are row-major `Vec<Elem>`. Everything here is exact.

use crate::gf::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "shape mismatch");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Matrix { rows: rows.len(), cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, f: &Field, other: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, f: &Field, c: Elem) -> Matrix {
        let data = self.data.iter().map(|&a| f.mul(c, a)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn rank(&self, f: &Field) -> usize {
        let mut d = self.data.clone();
        rank_in_place(f, &mut d, self.rows, self.cols)
    }

    /// Reduced row echelon form (zero rows dropped) and its pivot columns.
    pub fn rref(&self, f: &Field) -> (Matrix, Vec<usize>) {
        let mut d = self.data.clone();
        let pivots = rref_in_place(f, &mut d, self.rows, self.cols);
        d.truncate(pivots.len() * self.cols);
        (Matrix { rows: pivots.len(), cols: self.cols, data: d }, pivots)
    }

    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = rref_in_place(f, &mut aug.data, n, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel {x : Ax = 0}.
    pub fn nullspace(&self, f: &Field) -> Vec<Vec<Elem>> {
        let (r, pivots) = self.rref(f);
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; n];
            v[free] = 1;
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(row, free));
            }
            out.push(v);
        }
        out
    }
}

/// Gaussian elimination to RREF on a row-major buffer; returns pivot columns.
/// Rows past the rank are left zero.
pub fn rref_in_place(f: &Field, d: &mut [Elem], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| d[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                d.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(d[r * cols + c]).unwrap();
        if inv != 1 {
            for j in c..cols {
                d[r * cols + j] = f.mul(inv, d[r * cols + j]);
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = d[i * cols + c];
            if factor != 0 {
                for j in c..cols {
                    let t = f.mul(factor, d[r * cols + j]);
                    d[i * cols + j] = f.sub(d[i * cols + j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by forward elimination only; destroys the buffer.
pub fn rank_in_place(f: &Field, d: &mut [Elem], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| d[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                d.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(d[r * cols + c]).unwrap();
        for i in r + 1..rows {
            let x = d[i * cols + c];
            if x != 0 {
                let factor = f.mul(x, inv);
                for j in c..cols {
                    let t = f.mul(factor, d[r * cols + j]);
                    d[i * cols + j] = f.sub(d[i * cols + j], t);
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of a binary matrix whose rows are packed into machine words.
pub fn rank_gf2(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows[i + 1..].iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

/// Packs the rows of a binary `rows x cols` matrix (cols <= 64).
pub fn pack_gf2(d: &[Elem], rows: usize, cols: usize) -> Vec<u64> {
    (0..rows)
        .map(|i| {
            d[i * cols..(i + 1) * cols]
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &b)| acc | ((b as u64 & 1) << j))
        })
        .collect()
}

/// Rank of the F_q-span of `vectors` (each of equal length).
pub fn span_rank(f: &Field, vectors: &[Vec<Elem>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors).rank(f)
}

/// Whether `v` lies in the row space of the RREF matrix `basis` with the given pivots.
pub fn in_row_space(f: &Field, basis: &Matrix, pivots: &[usize], v: &[Elem]) -> bool {
    let mut w = v.to_vec();
    for (r, &p) in pivots.iter().enumerate() {
        let c = w[p];
        if c != 0 {
            for j in 0..w.len() {
                w[j] = f.sub(w[j], f.mul(c, basis.get(r, j)));
            }
        }
    }
    w.iter().all(|&x| x == 0)
}
