use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands do not conform (matrix product, vector length, ...).
    #[error("dimension mismatch in {op}: {detail}")]
    Dimension { op: &'static str, detail: String },

    /// A matrix that must be invertible is singular.
    #[error("singular matrix in {0}")]
    Singular(&'static str),

    /// A precondition on an input value failed (ranges, rank, parity).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A file or string could not be parsed in the expected format.
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal identity that must hold by construction failed.
    /// Indicates a bug, not a user error.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dim(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Dimension {
            op,
            detail: detail.into(),
        }
    }
}
