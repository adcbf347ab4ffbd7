use alloc::string::String;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Input text does not follow the grammar; `pos` is a byte offset.
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    /// Well-formed input that violates a structural invariant.
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    /// Operands of incompatible sizes (arity, vertex count, ...).
    #[error("size mismatch: {0}")]
    Mismatch(String),
    #[error("numeric: {0}")]
    Numeric(String),
}

impl Error {
    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Syntax { .. })
    }
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::Invalid(alloc::format!($($arg)*)) };
}
macro_rules! mismatch {
    ($($arg:tt)*) => { $crate::error::Error::Mismatch(alloc::format!($($arg)*)) };
}
pub(crate) use invalid;
pub(crate) use mismatch;
