use super::field::Prime;
use super::matrix::FpMatrix;

/// A subspace of F_p^n kept as a fully reduced echelon basis, grown one
/// vector at a time.
#[derive(Clone, Debug)]
pub struct EchelonSpace {
    p: Prime,
    dim: usize,
    // Each row is normalized with a leading 1 at `pivots[i]`; every other
    // row is zero in that column.
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl EchelonSpace {
    pub fn new(p: Prime, ambient_dim: usize) -> Self {
        EchelonSpace { p, dim: ambient_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows(p: Prime, ambient_dim: usize, rows: impl IntoIterator<Item = Vec<u8>>) -> Self {
        let mut s = Self::new(p, ambient_dim);
        for r in rows {
            s.insert(&r);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// The residue of `v` after eliminating all pivot columns.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let p = self.p;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                let nc = p.neg(c);
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = p.add(*x, p.mul(nc, y));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.dim);
        let p = self.p;
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = p.inv(r[pc]);
        for x in r.iter_mut() {
            *x = p.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                let nc = p.neg(c);
                for (x, &y) in row.iter_mut().zip(&r) {
                    if y != 0 {
                        *x = p.add(*x, p.mul(nc, y));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, r);
        true
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// The basis as matrix rows, in reduced echelon form.
    pub fn to_matrix(&self) -> FpMatrix {
        FpMatrix::from_residue_rows(self.p, self.dim, self.rows.clone())
    }

    /// Standard basis vectors at the non-pivot columns: a canonical complement.
    pub fn complement_basis(&self) -> Vec<Vec<u8>> {
        let mut is_pivot = vec![false; self.dim];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.dim)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut v = vec![0u8; self.dim];
                v[c] = 1;
                v
            })
            .collect()
    }

    /// Coordinates of `v` modulo this subspace, in the basis returned by
    /// `complement_basis`.
    pub fn quotient_coords(&self, v: &[u8]) -> Vec<u8> {
        let r = self.reduce(v);
        let mut is_pivot = vec![false; self.dim];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.dim).filter(|&c| !is_pivot[c]).map(|c| r[c]).collect()
    }
}
