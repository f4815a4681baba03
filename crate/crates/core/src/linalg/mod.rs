//! Exact dense linear algebra over F_p.

mod complex;
mod field;
mod matrix;
mod space;

pub use complex::{cochain_cohomology, ChainComplexFp, CohomologyBasis};
pub use field::{is_prime, Prime, MAX_PRIME};
pub use matrix::{FpMatrix, Rref};
pub use space::EchelonSpace;
