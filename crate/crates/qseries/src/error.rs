//! Error type shared by the series, polynomial and evaluation code.

use thiserror::Error;

/// Failures of exact or numeric series operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    /// The divisor is identically zero up to its truncation.
    #[error("division by a series that vanishes up to its truncation")]
    DivisionByZeroSeries,
    /// The numeric evaluation cannot reach the requested accuracy.
    #[error("insufficient convergence: |q| = {q_abs:.4}, estimated tail 2^{tail_log2:.1}")]
    InsufficientConvergence {
        /// Absolute value of `e^{2πiτ}` at the evaluation point.
        q_abs: f64,
        /// Base-2 logarithm of the estimated tail.
        tail_log2: f64,
    },
    /// The evaluation point is not in the upper half-plane.
    #[error("evaluation point is not in the upper half-plane")]
    NotInUpperHalfPlane,
    /// Exponents that cannot be represented with 64-bit rationals.
    #[error("exponent overflow")]
    ExponentOverflow,
    /// A JSON document did not describe a valid series.
    #[error("malformed series document: {0}")]
    Malformed(String),
}
