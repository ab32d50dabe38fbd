use thiserror::Error;

/// Errors raised by the group, character and verification layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed group spec `{spec}`: {reason}")]
    Spec { spec: String, reason: String },

    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("element component out of range: {0}")]
    OutOfRange(String),

    #[error("group of order {order} exceeds the configured bound {bound}")]
    BoundExceeded { order: usize, bound: usize },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("unsupported group: {0}")]
    Unsupported(String),

    #[error("inverse of zero")]
    DivisionByZero,

    #[error("value is not a nonnegative integer: {0}")]
    NotIntegral(String),

    #[error("invariant breach: {0}")]
    Invariant(String),

    #[error("check `{id}` failed: {detail}")]
    CheckFailed { id: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
