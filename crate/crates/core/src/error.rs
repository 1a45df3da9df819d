use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("generators are not cofinite: V(z^A) != {{0}} (no pure power of z{axis})")]
    NotCofinite { axis: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("weight sweep of {count} weights exceeds the limit of {limit}; pass --force to run anyway")]
    SweepTooLarge { count: u128, limit: u128 },

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown weight '{0}'")]
    UnknownWeight(String),

    #[error("weight '{name}' has {found} entries, expected {expected}")]
    WeightLength {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
