//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Exact integer coefficient table overflowed the 128-bit accumulator.
    #[error("coefficient overflow building basis row {n} (degree index {max_index}); reduce the degree")]
    CoefficientOverflow { n: usize, max_index: usize },

    /// An argument left the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// Root finding for the collocation nodes did not converge.
    #[error("root finding failed: {0}")]
    RootFinding(String),

    /// Vector/matrix sizes do not agree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A user-supplied function returned NaN or infinity.
    #[error("non-finite value from user function at {context} = {arg}")]
    NonFinite { context: &'static str, arg: f64 },

    /// The Newton linear solve hit a numerically singular Jacobian.
    #[error("singular Jacobian at iteration {iteration} (min |pivot| = {min_pivot:.3e})")]
    SingularJacobian { iteration: usize, min_pivot: f64 },

    /// A leading pivot of the Gram matrix was not positive.
    #[error("ill-conditioned Gram matrix: leading pivot {pivot_index} = {pivot:.3e}")]
    IllConditionedGram { pivot_index: usize, pivot: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
