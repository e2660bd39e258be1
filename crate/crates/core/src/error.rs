use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkzError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what} is not {p}-integral")]
    NotPIntegral { what: String, p: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("empty set: {0}")]
    EmptySet(String),

    #[error("degenerate term: {0}")]
    DegenerateTerm(String),

    #[error("point lies outside the cone: {0}")]
    OutsideCone(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("cap exceeded: {what} (limit {limit})")]
    CapExceeded { what: String, limit: String },

    #[error("degenerate embedding: {0}")]
    DegenerateEmbedding(String),

    #[error("parse error in field `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("arithmetic overflow in {0}")]
    Overflow(String),
}

impl GkzError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        GkzError::InvalidArgument(msg.into())
    }

    pub(crate) fn cap(what: impl Into<String>, limit: impl ToString) -> Self {
        GkzError::CapExceeded {
            what: what.into(),
            limit: limit.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, GkzError>;
