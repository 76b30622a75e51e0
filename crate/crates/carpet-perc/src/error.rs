use std::io;

/// Errors produced by lattice construction, simulation and analysis.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter violates a documented constraint.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested lattice would exceed the size limit.
    #[error("lattice too large: {side} cells per side exceeds the limit of {limit}")]
    TooLarge { side: u64, limit: u64 },

    /// A statistic is undefined for the given input (e.g. no clusters).
    #[error("undefined statistic: {0}")]
    Undefined(String),

    /// Not enough data points to carry out an estimation or fit.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The fit's normal equations are singular or degenerate.
    #[error("singular fit: {0}")]
    SingularFit(String),

    /// A text input (mask file, CSV) failed to parse.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Exit code the CLI maps this error to: 2 for I/O, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Io(_) => 2,
            _ => 1,
        }
    }
}
