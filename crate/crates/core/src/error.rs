use thiserror::Error;

/// Errors produced by the library.
///
/// Non-membership results (a function that is not monotone, an inconsistent
/// derivative profile) are ordinary values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity {0} exceeds the supported maximum of {max}", max = crate::point::MAX_ARITY)]
    ArityTooLarge(usize),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("table of arity {arity} needs {expected} values, found {found}")]
    TableLength {
        arity: usize,
        expected: usize,
        found: usize,
    },
    #[error("variable index {index} out of range 1..={arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("bit mask {mask:#x} does not fit arity {arity}")]
    MaskOutOfRange { mask: u64, arity: usize },
    #[error("parameter p = {p} out of range {min}..={max}")]
    ParameterOutOfRange { p: usize, min: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("function is not Boolean")]
    NotBoolean,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
