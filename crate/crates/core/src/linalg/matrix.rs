use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::Prime;
use crate::error::{Error, Result};

/// Dense row-major matrix over F_p.
///
/// Vectors are rows throughout the crate: a matrix `A` with `r` rows and `c`
/// columns represents the map `F_p^r -> F_p^c`, `x |-> x A`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(p: Prime, cols: usize, rows: &[R]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                m.data[i * cols + j] = p.reduce(x);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from residue rows that are already reduced mod p.
    pub fn from_residue_rows(p: Prime, cols: usize, rows: Vec<Vec<u8>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            assert_eq!(row.len(), cols, "row length mismatch");
            debug_assert!(row.iter().all(|&x| (x as u32) < p.get()));
            data.extend_from_slice(&row);
        }
        FpMatrix { p, rows: n, cols, data }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!((v as u32) < self.p.get());
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u8) {
        let idx = i * self.cols + j;
        self.data[idx] = self.p.add(self.data[idx], v);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u8] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn push_row(&mut self, row: &[u8]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, other.p);
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = self.p.get();
        let mut out = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u32;
                if a == 0 {
                    continue;
                }
                let brow = other.row(k);
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b as u32) % p;
                }
            }
        }
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|x| x as u8).collect(),
        }
    }

    /// `v A` for a row vector `v`.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.rows);
        let p = self.p.get();
        let mut out = vec![0u32; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(k)) {
                *o = (*o + a as u32 * b as u32) % p;
            }
        }
        out.into_iter().map(|x| x as u8).collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        FpMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| p.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: u8) -> FpMatrix {
        let p = self.p;
        FpMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| p.mul(a, c)).collect(),
        }
    }

    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &FpMatrix) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            m.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
        }
        for i in 0..other.rows {
            m.row_mut(self.rows + i)[self.cols..].copy_from_slice(other.row(i));
        }
        m
    }

    /// Row reduction restricted to pivots in the first `limit` columns.
    fn reduce_in_place(&mut self, limit: usize) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(self.cols) {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = p.inv(self.get(r, c));
            if inv != 1 {
                for x in self.row_mut(r) {
                    *x = p.mul(*x, inv);
                }
            }
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                let nf = p.neg(f);
                let row = self.row_mut(i);
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if y != 0 {
                        *x = p.add(*x, p.mul(nf, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let pivots = reduced.reduce_in_place(self.cols);
        Rref { rank: pivots.len(), reduced, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows spanning `{x : A x^T = 0}`, one per free column of the RREF.
    pub fn kernel_basis(&self) -> FpMatrix {
        let Rref { reduced, rank, pivots } = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = FpMatrix::zeros(p, 0, self.cols);
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; self.cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = p.neg(reduced.get(i, f));
            }
            basis.push_row(&v);
        }
        basis
    }

    /// Rows spanning `{x : x A = 0}`.
    pub fn left_kernel_basis(&self) -> FpMatrix {
        self.transpose().kernel_basis()
    }

    /// Basis of the row space in reduced echelon form.
    pub fn row_space(&self) -> FpMatrix {
        let Rref { reduced, rank, .. } = self.rref();
        let mut out = FpMatrix::zeros(self.p, rank, self.cols);
        out.data.copy_from_slice(&reduced.data[..rank * self.cols]);
        out
    }

    /// One solution of `x A = b`: the canonical one with free coordinates zero.
    pub fn solve(&self, b: &[u8]) -> Option<Vec<u8>> {
        self.solve_many(&[b.to_vec()]).pop().unwrap()
    }

    /// Solves `x A = b` for several right-hand sides at once.
    pub fn solve_many(&self, bs: &[Vec<u8>]) -> Vec<Option<Vec<u8>>> {
        // x A = b  <=>  A^T x^T = b^T; augment A^T with the columns b^T.
        let n = self.rows;
        let m = self.cols;
        let mut aug = FpMatrix::zeros(self.p, m, n + bs.len());
        for i in 0..n {
            for j in 0..m {
                aug.data[j * (n + bs.len()) + i] = self.get(i, j);
            }
        }
        for (k, b) in bs.iter().enumerate() {
            assert_eq!(b.len(), m, "right-hand side has wrong length");
            for j in 0..m {
                aug.data[j * (n + bs.len()) + n + k] = b[j];
            }
        }
        let pivots = aug.reduce_in_place(n);
        let rank = pivots.len();
        (0..bs.len())
            .map(|k| {
                if (rank..m).any(|i| aug.get(i, n + k) != 0) {
                    return None;
                }
                let mut x = vec![0u8; n];
                for (i, &pc) in pivots.iter().enumerate() {
                    x[pc] = aug.get(i, n + k);
                }
                Some(x)
            })
            .collect()
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}
