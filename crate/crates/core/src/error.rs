//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by builders, solvers, classification, and dynamics.
#[derive(Debug, Error)]
pub enum Error {
    /// A vorticity vector was rejected (zero or non-finite strength).
    #[error("invalid vorticities: {0}")]
    InvalidVorticity(String),

    /// A builder precondition (L = 0, Γ = 0, θ off the real axis, ...) failed.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Mismatched dimensions between a point and a system.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// An evaluation hit a (near-)collision where the model is singular.
    #[error("collision: minimum separation {min_sep:.3e} below threshold {threshold:.3e}")]
    Collision { min_sep: f64, threshold: f64 },

    /// A solver-level failure (non-square system, step underflow everywhere, ...).
    #[error("solver: {0}")]
    Solver(String),

    /// Classification rejected a solution set or configuration.
    #[error("classification: {0}")]
    Classification(String),

    /// An invalid argument outside the above categories.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
