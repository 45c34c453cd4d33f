use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degree {r} exceeds the explicit permutation bound {bound}")]
    OracleBound { r: usize, bound: usize },
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("invariant failed: {0}")]
    Invariant(String),
    #[error("complement search exhausted: {0}")]
    ComplementExhausted(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
