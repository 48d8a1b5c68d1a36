use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input violates an operation's precondition.
    #[error("rejected input: {0}")]
    RejectedInput(String),
    /// The instance is larger than the exact enumerations can handle.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// The valuation of zero was requested.
    #[error("valuation is undefined for the zero element")]
    UndefinedValuation,
    /// A textual value (rational, sign pattern, document) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn rejected(msg: impl Into<String>) -> Error {
    Error::RejectedInput(msg.into())
}

pub(crate) fn capacity(msg: impl Into<String>) -> Error {
    Error::Capacity(msg.into())
}
