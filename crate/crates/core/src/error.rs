use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    /// The induced action on Neron-Severi classes has an eigenvalue that is
    /// not a root of unity.
    #[error("positive entropy: characteristic polynomial has a non-cyclotomic factor {0}")]
    PositiveEntropy(String),

    #[error("operator is not unipotent")]
    NotUnipotent,

    #[error("no positivity sequence: nilpotency exponent is zero")]
    TrivialNilpotency,
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::OutOfRange(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
