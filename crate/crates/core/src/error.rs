use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {value} of {what} is outside [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("order {order} exceeds the {engine} cap of {cap}")]
    TooLarge {
        engine: &'static str,
        order: usize,
        cap: usize,
    },
    #[error("interval DP width exceeded: {detail}")]
    WidthExceeded { detail: String },
    #[error("configuration is not sorted")]
    NotSorted,
    #[error("block in row {row} cannot be pushed {direction}")]
    PushBlocked { row: usize, direction: &'static str },
    #[error("parameter range violated: {0}")]
    Range(String),
    #[error("permutation set is empty")]
    EmptySet,
    #[error("anticode size must be positive")]
    ZeroAnticode,
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable tag, used in structured CLI error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::OutOfRange { .. } => "OutOfRange",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::TooLarge { .. } => "TooLarge",
            Error::WidthExceeded { .. } => "WidthExceeded",
            Error::NotSorted => "NotSorted",
            Error::PushBlocked { .. } => "PushBlocked",
            Error::Range(_) => "RangeError",
            Error::EmptySet => "EmptySet",
            Error::ZeroAnticode => "ZeroAnticode",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::Invalid(_) => "Invalid",
        }
    }
}
