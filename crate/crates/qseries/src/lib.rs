//! Exact q-expansion and polynomial arithmetic.
//!
//! This crate is the arithmetic substrate for everything else in the
//! workspace:
//!
//! * [`FracSeries`] — truncated Laurent series in `q^{1/denom}` (with an
//!   optional rational shift) over exact rationals, with truncation tracked
//!   pessimistically through every operation;
//! * [`IPoly`] / [`RFunc`] — integer polynomials, exact resultants and
//!   rational functions built from them;
//! * [`BigComplex`] — arbitrary-precision complex numbers (on top of
//!   `astro-float`) and [`evaluate_series`] for evaluating a series at a
//!   point of the upper half-plane;
//! * [`eta_expansion`] / [`delta_j_expansions`] — the classical building
//!   blocks η, Δ and j;
//! * [`linalg`] — fraction-free exact linear solves.

pub mod bigcomplex;
pub mod error;
pub mod eta;
pub mod eval;
pub mod linalg;
pub mod poly;
pub mod series;

pub use bigcomplex::{BigComplex, DEFAULT_PRECISION};
pub use error::SeriesError;
pub use eta::{delta_j_expansions, divisor_sigma, eta_expansion};
pub use eval::{evaluate_series, Evaluation, PreparedSeries};
pub use poly::{poly_resultant, IPoly, RFunc};
pub use series::{FracSeries, DEFAULT_ORDER};

/// Exact rational numbers used for series coefficients.
pub type Rat = num_rational::BigRational;
/// Small exact rationals used for exponents.
pub type Exp = num_rational::Rational64;
