use thiserror::Error;

use crate::exactmath::MathError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Math(#[from] MathError),

    /// `P_k(-lambda_k / a_k) = 0`, or `a_k = 0` where the construction divides by it.
    #[error("degenerate system at index {k}: {reason}")]
    Degenerate { k: usize, reason: String },

    #[error("coefficient index {needed} requested but the system defines indices 0..={available}")]
    CoefficientRange { needed: usize, available: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("element is not in the space V: {0}")]
    NotInV(String),

    #[error("enumeration exceeded the cap of {cap} items")]
    EnumerationOverflow { cap: usize },

    #[error("memo table limit of {limit} entries exceeded")]
    MemoLimit { limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Degenerate { .. } | Error::HypothesisViolated(_) | Error::Math(_) => 2,
            Error::CoefficientRange { .. }
            | Error::NotInV(_)
            | Error::EnumerationOverflow { .. }
            | Error::MemoLimit { .. }
            | Error::InvalidParameter(_)
            | Error::Unsupported(_)
            | Error::InvalidInput(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
