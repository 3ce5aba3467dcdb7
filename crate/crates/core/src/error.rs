use thiserror::Error;

pub type Result<T> = std::result::Result<T, CoreError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid goal region: {0}")]
    InvalidGoal(String),

    #[error("goal set is empty")]
    EmptyGoalSet,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("start state is not valid")]
    InvalidStart,
}

pub(crate) fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(CoreError::DimensionMismatch { expected, actual })
    }
}
