//! Closed-form multiplicities of special cycles on the CM moduli of an
//! imaginary quadratic field `k = ℚ(√D)` with `|D|` prime, and the
//! arithmetic degrees built from them.
//!
//! For `m ∈ (1/|D|)ℤ` with `Diff(m) = {p}` the multiplicity of `Z(m)` at
//! the prime `𝔓₀^{σ(𝔟)}` above `p` is
//!
//! ```text
//! 2^{o(m) − 1} · ν_p(m) · ρ(m|D|/p, C),
//! ```
//!
//! where `ρ(n, C)` counts integral ideals of norm `n` in the class `C`
//! determined by `𝔞` and `𝔟` (see [`Labeling`]); it vanishes when
//! `|Diff(m)| ≠ 1`.  Everything here is exact rational arithmetic.

mod degree;
mod multiplicity;

pub use degree::{degree, degree_series, is_represented, Degree, DegreeSeries, ResidueDegrees};
pub use multiplicity::{
    cycle_multiplicities, cycle_multiplicity, cycle_multiplicity_translated, predicted_valuation, telescoping_check,
    CycleMultiplicity, Labeling,
};

use localinv::LocalError;
use num_rational::Rational64;
use thiserror::Error;

/// Failures of the cycle formulas.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    /// The closed form needs `|D|` prime; use
    /// [`cycle_multiplicity_translated`] with explicit translation data.
    #[error("|D| = {0} is not prime; supply the class translation explicitly")]
    CompositeD(i64),
    /// `|Diff(m)| ≠ 1`, so no prime supports the cycle.
    #[error("Diff({m}) has {size} primes, not one")]
    NoSupport {
        /// The index `m`.
        m: Rational64,
        /// `|Diff(m)|`.
        size: usize,
    },
    /// `m·|D|` is not a positive integer.
    #[error("m = {0} is not a positive element of (1/|D|)ℤ")]
    BadIndex(Rational64),
    /// A local invariant failed.
    #[error(transparent)]
    Local(#[from] LocalError),
}
