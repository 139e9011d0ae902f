use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator {symbol} is out of range for genus {genus}")]
    GeneratorOutOfRange { symbol: String, genus: u32 },

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: u32, right: u32 },

    #[error("genus must be at least 1")]
    ZeroGenus,

    #[error("separating type {h} is invalid for fiber genus {genus}")]
    InvalidSeparatingType { h: u32, genus: u32 },

    #[error("n must be at least 1, got {0}")]
    InvalidN(i64),

    #[error("cover degree must be at least 1, got {0}")]
    InvalidDegree(i64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{0}")]
    Inconsistent(String),

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
