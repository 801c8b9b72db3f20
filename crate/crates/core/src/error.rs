use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An argument is well-formed but outside the domain of the operation
    /// (division by zero, order of zero, a spectrum that leaves the base field).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("enumeration limit exceeded: code has {size} codewords, limit is {limit}")]
    EnumerationLimit { size: String, limit: u64 },

    #[error("group not applicable: {0}")]
    GroupNotApplicable(String),

    #[error("formula not applicable: {0}")]
    FormulaNotApplicable(String),

    /// A closed-form orbit count did not divide exactly.
    #[error("non-integral formula value: {0}")]
    NonIntegral(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_)
            | Error::Domain(_)
            | Error::Syntax { .. }
            | Error::FormulaNotApplicable(_)
            | Error::NonIntegral(_) => 1,
            Error::EnumerationLimit { .. } => 2,
            Error::GroupNotApplicable(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}
