use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the documented domain of an operation.
    #[error("{op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// An iterative or extrapolating procedure failed to settle.
    #[error("{op} did not converge: {reason}")]
    NonConvergence { op: &'static str, reason: String },

    /// Two routes that must agree did not.
    #[error("{op}: routes disagree by {discrepancy:e} (tolerance {tolerance:e})")]
    Validation {
        op: &'static str,
        discrepancy: f64,
        tolerance: f64,
    },

    /// Data would reach its periodic images within the requested time.
    #[error("{op}: data needs half-extent {required}, box has {available}")]
    Wraparound {
        op: &'static str,
        required: f64,
        available: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(op: &'static str, reason: impl Into<String>) -> Result<T> {
    Err(Error::Domain {
        op,
        reason: reason.into(),
    })
}
