use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("size bound exceeded: {what} (limit {limit})")]
    SizeBound { what: &'static str, limit: usize },

    #[error("{0} is not a supported prime")]
    InvalidPrime(u32),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("chain complex invariant violated at degree {degree}: {reason}")]
    ComplexInvariant { degree: i64, reason: String },

    #[error("not closed: {0}")]
    NotClosed(String),

    #[error("collection is not closed under conjugation: {0}")]
    NotConjugationClosed(String),

    #[error("degree {degree} exceeds bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("construction check failed: {0}")]
    Construction(String),

    #[error("cache i/o: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
