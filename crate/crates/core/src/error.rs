use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: a table that is not a group, a bad file, a non-prime modulus.
    #[error("validation error: {0}")]
    Validation(String),

    /// Input is well-formed but outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A power-commutator presentation that does not define a group of the stated order.
    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("budget `{name}` exceeded: {detail} (limit {limit})")]
    Budget {
        name: &'static str,
        limit: u64,
        detail: String,
    },

    /// A mathematical invariant failed. Always a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn budget(name: &'static str, limit: u64, detail: impl Into<String>) -> Self {
        Error::Budget {
            name,
            limit,
            detail: detail.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Domain(_) | Error::Presentation(_) => 2,
            Error::Budget { .. } => 3,
            Error::Internal(_) => 4,
        }
    }
}
