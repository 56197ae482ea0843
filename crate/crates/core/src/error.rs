use thiserror::Error;

use crate::allocation::AllocationViolation;
use crate::filling::FillingViolation;
use crate::outline::OutlineViolation;
use crate::wideness::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("index out of range: {0}")]
    Index(String),

    /// An oracle was asked to run beyond the size it can exhaust.
    #[error("{what} exceeds the oracle limit ({actual} > {limit})")]
    ScaleLimit {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("diagram is not wide: {0}")]
    NotWide(Witness),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(AllocationViolation),

    #[error("invalid filling: {0}")]
    InvalidFilling(FillingViolation),

    #[error("invalid outline rectangle: {0}")]
    InvalidOutline(OutlineViolation),

    /// A condition that must hold by construction did not. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
