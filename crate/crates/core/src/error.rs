use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exhaustive enumeration was asked to exceed its configured bound.
    #[error("refused: {0}")]
    Refused(String),

    /// A quantity that must be an integer (or share a radicand) did not.
    /// This always indicates a bug upstream, typically in a character value.
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
