use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text. `line` is 1-based; `column` is set for CSV cells.
    #[error("parse error at line {line}{}: {message}", column.map(|c| format!(", column {c}")).unwrap_or_default())]
    Parse {
        line: usize,
        column: Option<usize>,
        message: String,
    },

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition of the callee was not met by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An exhaustive routine or enumeration would exceed its configured bound.
    #[error("capacity exceeded: {what} ({actual} > limit {limit})")]
    Capacity {
        what: &'static str,
        actual: u128,
        limit: u128,
    },

    /// A proven structural property failed to hold. Always a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column: None,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
