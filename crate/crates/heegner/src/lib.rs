//! Heegner divisors on `X₀(23)` and the CM values of the Hauptmodul
//! `H(τ) = θ_𝒪(τ)/(η(τ)η(23τ)) − 3`.
//!
//! * [`enumerate_points`] — one `Γ₀(23)`-representative `[A, B, C]`
//!   (`23 | A`, `B ≡ r mod 46`) for every `SL₂(ℤ)`-class of forms of
//!   discriminant `−d`, found by a bounded search over unimodular
//!   transforms and certified by counting;
//! * [`reduce_to_domain`] / [`eval_h23`] — moving a point by
//!   translations, the Fricke involution and `Γ₀(23)` moves to make `|q|`
//!   small, then evaluating `θ_𝒪` and `η` at high precision;
//! * [`heegner_polynomial`] — the integer polynomial
//!   `P_d(x) = ∏ (x − H(z))` over the points of both residues `±r`, with
//!   precision escalation and an on-disk cache;
//! * [`minpoly_cm`] — the cubic over the three points of discriminant
//!   `−23`, with its real root identified as `H(z₂₃)`.

mod domain;
mod evaluate;
mod points;
mod polynomial;

pub use domain::{reduce_to_domain, reduce_with_word, Move, Reduction};
pub use evaluate::{eval_h23, eval_h23_detailed, HValue, HAUPTMODUL_SHIFT};
pub use points::{enumerate_points, heegner_residues, is_heegner_discriminant, HeegnerDivisor, HeegnerPoint};
pub use polynomial::{
    divisor_values, heegner_polynomial, minpoly_cm, CmMinpoly, Convention, HeegnerCache, HeegnerPolynomial, ROUNDING_TOLERANCE,
    Z23_FORM,
};

use thiserror::Error;

/// The level `N = 23`.
pub const LEVEL: i64 = 23;

/// Failures while enumerating, evaluating or rounding.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeegnerError {
    /// `r² ≢ −d mod 92`, or `d ≤ 0`.
    #[error("{r}² is not ≡ −{d} mod 92")]
    NotHeegner {
        /// The discriminant magnitude.
        d: i64,
        /// The residue mod 46.
        r: i64,
    },
    /// The transform search found no equivalent form with `23 | A` and the
    /// requested residue within the final bound.
    #[error("no [23a, {r}, c]-form equivalent to {form} found with entries up to {bound}")]
    TransportFailure {
        /// The reduced form that could not be transported.
        form: String,
        /// The residue mod 46.
        r: i64,
        /// The last search bound tried.
        bound: i64,
    },
    /// The number of points found differs from the `SL₂(ℤ)` class count.
    #[error("found {found} points of discriminant −{d}, expected {expected}")]
    CountMismatch {
        /// The discriminant magnitude.
        d: i64,
        /// Points found.
        found: usize,
        /// Class count.
        expected: usize,
    },
    /// No move brings `|q|` below the configured bound.
    #[error("no move reaches |q| ≤ {bound} (best {q_abs:.4})")]
    StuckPoint {
        /// Best `|q|` reached.
        q_abs: f64,
        /// The configured bound.
        bound: f64,
    },
    /// The coefficients of a polynomial did not round to integers even at
    /// the precision cap.
    #[error("P_{d} does not round to integers at {precision} bits (deviation 2^{deviation_log2:.1})")]
    RoundingFailure {
        /// The discriminant magnitude.
        d: i64,
        /// Last precision tried.
        precision: usize,
        /// Base-2 logarithm of the largest deviation from an integer.
        deviation_log2: f64,
    },
    /// A numeric evaluation failed.
    #[error(transparent)]
    Series(#[from] qseries::SeriesError),
}

/// Numeric settings for CM evaluations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMContext {
    /// Working precision in bits.
    pub precision: usize,
    /// Number of `q`-exponents used when `|q| ≤ q_bound`; scaled with the
    /// precision on escalation.
    pub series_order: usize,
    /// Target bound on `|q|` after reduction.
    pub q_bound: f64,
    /// Largest precision tried by escalation.
    pub precision_cap: usize,
}

impl Default for CMContext {
    fn default() -> Self {
        CMContext { precision: 256, series_order: 300, q_bound: 0.35, precision_cap: 4096 }
    }
}

impl CMContext {
    /// The context with doubled precision and proportionally scaled series
    /// order, or `None` beyond the cap.
    pub fn escalated(&self) -> Option<CMContext> {
        let precision = self.precision * 2;
        (precision <= self.precision_cap).then_some(CMContext { precision, series_order: self.series_order * 2, ..*self })
    }
}
