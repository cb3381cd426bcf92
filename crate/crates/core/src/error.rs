use thiserror::Error;

/// Errors produced by the library.
///
/// The variants map onto the CLI exit-code classes: `Input`/`Parse` are user
/// errors, `Capability` marks an operation that refuses an instance outside
/// its supported size, and `Internal` means a guaranteed property failed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("capability limit: {0}")]
    Capability(String),

    #[error("no convergence after {iterations} iterations (lower {lower}, upper {upper}, gap {gap})")]
    Convergence {
        iterations: usize,
        lower: f64,
        upper: f64,
        gap: f64,
    },

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
