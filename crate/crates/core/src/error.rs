use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two set functions (or a function and an inequality) live on different ground sets.
    #[error("ground set mismatch: {left:?} vs {right:?}")]
    GroundMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("invalid ground set: {0}")]
    InvalidGround(String),

    /// A file or string could not be interpreted.
    #[error("parse error: {0}")]
    Parse(String),

    /// The input is degenerate for the requested construction (e.g. zero rank).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
