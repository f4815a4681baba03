use serde::{Deserialize, Serialize};

use super::field::Prime;
use super::matrix::FpMatrix;
use super::space::EchelonSpace;
use crate::error::{Error, Result};

/// A bounded cochain complex of finite-dimensional F_p spaces
/// `C^lo -> C^{lo+1} -> ... -> C^hi`.
///
/// `differentials[k]` maps degree `lo + k` to `lo + k + 1` in the row-vector
/// convention, so it has `dims[k]` rows and `dims[k + 1]` columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplexFp {
    p: Prime,
    lowest: i64,
    dims: Vec<usize>,
    differentials: Vec<FpMatrix>,
}

/// Cohomology at one degree with representative cocycles.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    pub degree: i64,
    /// Rows are cocycles whose classes form a basis of H^n.
    pub representatives: FpMatrix,
    coboundaries: EchelonSpace,
    cocycle_dim: usize,
}

impl ChainComplexFp {
    pub fn new(p: Prime, lowest: i64, dims: Vec<usize>, differentials: Vec<FpMatrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Dimension("complex needs at least one degree".into()));
        }
        if differentials.len() + 1 != dims.len() {
            return Err(Error::Dimension(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.prime() != p {
                return Err(Error::Dimension("differential over a different prime".into()));
            }
            if d.rows() != dims[k] || d.cols() != dims[k + 1] {
                return Err(Error::ComplexInvariant {
                    degree: lowest + k as i64,
                    reason: format!(
                        "differential is {}x{}, expected {}x{}",
                        d.rows(),
                        d.cols(),
                        dims[k],
                        dims[k + 1]
                    ),
                });
            }
        }
        for k in 1..differentials.len() {
            if !differentials[k - 1].mul(&differentials[k]).is_zero() {
                return Err(Error::ComplexInvariant {
                    degree: lowest + k as i64,
                    reason: "consecutive differentials do not compose to zero".into(),
                });
            }
        }
        Ok(ChainComplexFp { p, lowest, dims, differentials })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn lowest_degree(&self) -> i64 {
        self.lowest
    }

    pub fn highest_degree(&self) -> i64 {
        self.lowest + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.dims[k])
    }

    fn index(&self, n: i64) -> Option<usize> {
        if n < self.lowest || n > self.highest_degree() {
            None
        } else {
            Some((n - self.lowest) as usize)
        }
    }

    /// The differential leaving degree `n` (a zero map outside the range).
    pub fn differential(&self, n: i64) -> FpMatrix {
        match self.index(n) {
            Some(k) if k < self.differentials.len() => self.differentials[k].clone(),
            _ => FpMatrix::zeros(self.p, self.dim(n), self.dim(n + 1)),
        }
    }

    /// The same complex with every degree raised by `by`.
    pub fn shift(&self, by: i64) -> ChainComplexFp {
        ChainComplexFp { lowest: self.lowest + by, ..self.clone() }
    }

    pub fn cohomology_dim(&self, n: i64) -> usize {
        let out = self.differential(n);
        let inc = self.differential(n - 1);
        self.dim(n) - out.rank() - inc.rank()
    }

    /// H^n with representatives: cocycle basis vectors, taken in kernel-basis
    /// order, that are independent modulo the coboundaries.
    pub fn cohomology(&self, n: i64) -> CohomologyBasis {
        let dim = self.dim(n);
        let cocycles = self.differential(n).left_kernel_basis();
        let boundary = self.differential(n - 1);
        let mut coboundaries = EchelonSpace::new(self.p, dim);
        for i in 0..boundary.rows() {
            coboundaries.insert(boundary.row(i));
        }
        let mut span = coboundaries.clone();
        let mut reps = FpMatrix::zeros(self.p, 0, dim);
        for i in 0..cocycles.rows() {
            if span.insert(cocycles.row(i)) {
                reps.push_row(cocycles.row(i));
            }
        }
        CohomologyBasis { degree: n, representatives: reps, coboundaries, cocycle_dim: cocycles.rows() }
    }
}

impl CohomologyBasis {
    pub fn dim(&self) -> usize {
        self.representatives.rows()
    }

    pub fn cocycle_dim(&self) -> usize {
        self.cocycle_dim
    }

    /// Coordinates of the class of the cocycle `z` in the representative basis,
    /// or `None` if `z` is not a cocycle of this degree's span.
    pub fn coordinates(&self, z: &[u8]) -> Option<Vec<u8>> {
        let stacked = self.representatives.vstack(&self.coboundaries.to_matrix());
        let x = stacked.solve(z)?;
        Some(x[..self.dim()].to_vec())
    }

    /// Coordinates of many cocycles at once.
    pub fn coordinates_many(&self, zs: &[Vec<u8>]) -> Option<Vec<Vec<u8>>> {
        if zs.is_empty() {
            return Some(Vec::new());
        }
        let stacked = self.representatives.vstack(&self.coboundaries.to_matrix());
        stacked
            .solve_many(zs)
            .into_iter()
            .map(|x| x.map(|x| x[..self.dim()].to_vec()))
            .collect()
    }
}

/// Dimension and representative cocycles of H^n(C).
pub fn cochain_cohomology(complex: &ChainComplexFp, n: i64) -> (usize, FpMatrix) {
    let h = complex.cohomology(n);
    (h.dim(), h.representatives)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    #[test]
    fn single_space() {
        let p = Prime::new(7).unwrap();
        let c = ChainComplexFp::new(p, 0, vec![1], vec![]).unwrap();
        assert_eq!(cochain_cohomology(&c, 0).0, 1);
        assert_eq!(c.cohomology_dim(1), 0);
    }

    #[test]
    fn isomorphism_has_no_cohomology() {
        let d = FpMatrix::from_rows(p3(), 1, &[[1]]).unwrap();
        let c = ChainComplexFp::new(p3(), 0, vec![1, 1], vec![d]).unwrap();
        assert_eq!((c.cohomology_dim(0), c.cohomology_dim(1)), (0, 0));
    }

    #[test]
    fn zero_map_keeps_everything() {
        let d = FpMatrix::zeros(p3(), 1, 1);
        let c = ChainComplexFp::new(p3(), 0, vec![1, 1], vec![d]).unwrap();
        assert_eq!((c.cohomology_dim(0), c.cohomology_dim(1)), (1, 1));
    }

    #[test]
    fn rejects_non_complex() {
        let one = FpMatrix::identity(p3(), 1);
        let err = ChainComplexFp::new(p3(), 0, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err();
        assert!(matches!(err, Error::ComplexInvariant { degree: 1, .. }));
    }

    #[test]
    fn shift_reindexes() {
        let d = FpMatrix::from_rows(p3(), 2, &[[1, 0]]).unwrap();
        let c = ChainComplexFp::new(p3(), 0, vec![1, 2], vec![d]).unwrap();
        let s = c.shift(5);
        for n in -1..3 {
            assert_eq!(c.cohomology_dim(n), s.cohomology_dim(n + 5));
        }
    }

    #[test]
    fn coordinates_modulo_coboundaries() {
        // 0 -> F_3 --(1,1)--> F_3^2 -> 0: H^1 is one-dimensional.
        let d = FpMatrix::from_rows(p3(), 2, &[[1, 1]]).unwrap();
        let c = ChainComplexFp::new(p3(), 0, vec![1, 2], vec![d]).unwrap();
        let h = c.cohomology(1);
        assert_eq!(h.dim(), 1);
        let rep = h.representatives.row(0).to_vec();
        let shifted: Vec<u8> = rep.iter().zip([1u8, 1]).map(|(&a, b)| (a + b) % 3).collect();
        assert_eq!(h.coordinates(&shifted), Some(vec![1]));
        assert_eq!(h.coordinates(&[1, 1]), Some(vec![0]));
    }
}
