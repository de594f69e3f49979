use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A computation would exceed a configured size guard.
    #[error("{what} = {value} exceeds the limit {limit}")]
    SizeLimit {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("polynomial is not symmetric under n1 <-> n2")]
    NotSymmetric,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An internal consistency check failed; the result must not be trusted.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
