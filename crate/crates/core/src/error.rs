use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix dimensions do not match: {0}")]
    Shape(String),

    #[error("Smith normal form refused for a {rows}x{cols} matrix (limit {limit}x{limit})")]
    SmithTooLarge { rows: usize, cols: usize, limit: usize },

    #[error("polynomials live in different rings: {left} vs {right} variables")]
    VariableCount { left: usize, right: usize },

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
