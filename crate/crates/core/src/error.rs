use thiserror::Error;

/// Errors raised by `ras-core` operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum RasError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Exhaustive enumeration would visit more subsets than the configured guard allows.
    #[error("capacity budget exceeded: C({nr}, {l}) = {subsets} subsets exceeds the guard of {guard}")]
    CapacityBudget {
        nr: usize,
        l: usize,
        subsets: u128,
        guard: u128,
    },

    #[error("numeric failure: {0}")]
    NumericFailure(String),
}

pub type Result<T> = std::result::Result<T, RasError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(RasError::InvalidArgument(msg.into()))
}
