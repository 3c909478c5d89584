//! Crate-wide error types.

use thiserror::Error;

/// Diagnostics carried by a failed adaptive integration.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeFailure {
    /// Time reached when the step control gave up.
    pub t: f64,
    /// Last attempted step size.
    pub step: f64,
    /// Scaled error norm of the last rejected step.
    pub err_norm: f64,
    /// Number of steps taken so far.
    pub steps: usize,
    /// What stopped the integration.
    pub reason: OdeFailureReason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeFailureReason {
    StepSizeUnderflow,
    MaxStepsExceeded,
}

impl std::fmt::Display for OdeFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let what = match self.reason {
            OdeFailureReason::StepSizeUnderflow => "step size underflow",
            OdeFailureReason::MaxStepsExceeded => "maximum step count exceeded",
        };
        write!(
            f,
            "{what} at t = {:.6e} (step = {:.3e}, err_norm = {:.3e}, steps = {})",
            self.t, self.step, self.err_norm, self.steps
        )
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// The chain specification itself is inconsistent.
    #[error("invalid chain spec: {0}")]
    InvalidSpec(String),

    /// An argument violates an interface contract (dimension mismatch,
    /// non-unitary output transformation, malformed coefficient vector, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// Input outside the mathematical domain of a closed-form expression.
    #[error("domain error: {0}")]
    Domain(String),

    /// Deliberately out of supported range (brute-force oracle sizes).
    #[error("resource guard: {0}")]
    ResourceGuard(String),

    /// Requested a fixed reference system that does not exist.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Adaptive step control failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(OdeFailure),

    /// A physical invariant was violated beyond tolerance.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("config error: {0}")]
    Config(String),
}

impl From<OdeFailure> for Error {
    fn from(f: OdeFailure) -> Self {
        Error::Numerical(f)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
