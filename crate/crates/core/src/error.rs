use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent arguments.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A documented precondition of an operation does not hold for the input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The operation is not defined for this degree or ring.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{what} exceeded the cap of {limit} (reached {reached})")]
    Capacity {
        what: &'static str,
        limit: usize,
        reached: usize,
    },

    #[error("matrix is not invertible")]
    NotInvertible,

    /// Exhaustive search found no exchange idempotent; only possible for a defective table.
    #[error("not an exchange ring: no idempotent witness for element {0}")]
    NotExchange(u32),

    #[error("ring axiom violated: {0}")]
    Axiom(String),

    #[error("sampling failed: {0}")]
    Sampling(String),

    /// An internally asserted identity failed. This is a bug, never a valid outcome.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    /// Bad command-line or suite selection.
    #[error("usage: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}
