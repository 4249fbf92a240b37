use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The evaluation budget was already spent before the call.
    #[error("evaluation budget exhausted ({used}/{limit})")]
    BudgetExhausted { used: u64, limit: u64 },

    /// A vector's length does not match the problem dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The archive holds fewer entries than a sampling operation needs.
    #[error("insufficient history: archive holds {len} entries, need {need}")]
    InsufficientHistory { len: usize, need: usize },

    /// A transformation direction collapsed to the zero vector.
    #[error("degenerate direction: {context}")]
    DegenerateDirection { context: &'static str },

    /// No benchmark is registered under the given id.
    #[error("unknown benchmark '{0}'")]
    UnknownBenchmark(String),

    /// The benchmark needs a larger dimension than requested.
    #[error("benchmark '{name}' needs dimension >= {min}, got {got}")]
    DimensionTooSmall {
        name: &'static str,
        min: usize,
        got: usize,
    },

    /// The analytic gradient is not defined at the query point.
    #[error("gradient undefined at coordinate {coordinate}")]
    NondifferentiablePoint { coordinate: usize },

    /// A parameter or configuration value violates its contract.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A state vector contains a non-finite entry or is empty.
    #[error("invalid state vector: {0}")]
    InvalidState(&'static str),

    /// File output failed; the path is kept for context.
    #[error("io error at '{path}': {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}
