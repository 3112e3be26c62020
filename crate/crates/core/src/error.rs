use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singularity at t = {t}: {what}")]
    Singularity { t: f64, what: String },

    /// A series or quadrature did not reach the requested accuracy.
    #[error("accuracy error: {0}")]
    Accuracy(String),

    #[error("integration failed at t = {t}: {msg}")]
    Integration { t: f64, msg: String },

    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    /// A documented precondition of an operation was violated.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn singular(t: f64, what: impl Into<String>) -> Self {
        Error::Singularity { t, what: what.into() }
    }

    /// True for failures caused by the caller's input rather than by the
    /// numerics (used by the CLI to pick an exit code).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownIdentifier(_)
                | Error::UnknownFunction(_)
                | Error::Invalid(_)
                | Error::Io(_)
                | Error::Json(_)
        )
    }
}
