//! Weakly holomorphic weight-one forms for `Γ₀(23)` with character `χ₋₂₃`.
//!
//! * [`hauptmodul`] — `H = θ_𝒪/g − 3 = q⁻¹ + 4q + 7q² + …`, the Hauptmodul
//!   of `Γ₀(23)⁺`, with `g = η(τ)η(23τ)`;
//! * [`build_fm_plus`] / [`build_fm_minus`] — the plus-space forms
//!   `f_m = q^{−m} + O(q²)` and the minus-space forms `f₂, f₃, f₄`, obtained
//!   by exact linear solves over a spanning set of weight-one forms;
//! * [`ladder_fm`] — `f_m` for `m > 23` from `j(23τ)^a·f_b`;
//! * [`duality_check`] — the coefficient duality between plus and minus
//!   forms;
//! * [`tensor_principal_part`] — the principal part of the vector-valued
//!   tensor product `f_m ⊗ φ₀,₁`, corrected to vanishing constant term.

mod cache;
mod duality;
mod level;
mod principal;
mod solve;

pub use cache::FormCache;
pub use duality::{duality_check, duality_report, DualityEntry, DualityReport};
pub use level::{hauptmodul, Level23, LEVEL};
pub use principal::{printed_table, residue_for, tensor_principal_part, tensor_principal_part_with, PrincipalPartTable};
pub use solve::{build_fm_minus, build_fm_plus, build_fm_plus_with, ladder_fm, FormFactory, SpanningSet};

use qseries::{FracSeries, Rat, SeriesError};
use thiserror::Error;

/// Errors from form construction.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum WhError {
    /// The linear system over the spanning set has no valid solution.
    #[error("no {parity} form with pole order {m} in the span: {reason}")]
    SolveFailure {
        /// Requested pole order.
        m: i64,
        /// Requested space.
        parity: Parity,
        /// What went wrong.
        reason: String,
    },
    /// `χ(m) = +1`: no plus form has principal part `q^{−m}`.
    #[error("pole order {0} is obstructed in the plus space (χ(m) = +1)")]
    Obstructed(i64),
    /// Arguments outside the supported range.
    #[error("unsupported request: {0}")]
    Unsupported(String),
    /// Series arithmetic failed.
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Plus space (support where `χ(n) ≠ −1`) or minus space (`χ(n) ≠ +1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    /// `χ(n) ≠ −1` on the support.
    Plus,
    /// `χ(n) ≠ +1` on the support.
    Minus,
}

impl Parity {
    /// The character value excluded from the support.
    pub fn forbidden(self) -> i32 {
        match self {
            Parity::Plus => -1,
            Parity::Minus => 1,
        }
    }

    /// `"plus"` or `"minus"`.
    pub fn name(self) -> &'static str {
        match self {
            Parity::Plus => "plus",
            Parity::Minus => "minus",
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A weakly holomorphic weight-one form `Σ c(n) qⁿ` of level 23 with
/// character `χ₋₂₃`, with its space and pole order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WHForm {
    series: FracSeries,
    parity: Parity,
    pole_order: i64,
}

impl WHForm {
    /// Wraps a series, checking integral exponents and the support condition
    /// of `parity` to truncation.
    pub fn new(series: FracSeries, parity: Parity, pole_order: i64) -> Result<Self, WhError> {
        let fail = |reason: &str| WhError::SolveFailure { m: pole_order, parity, reason: reason.into() };
        if series.exponent_denominator() != 1 {
            return Err(fail("non-integral exponents"));
        }
        if series.terms().any(|(e, _)| level::chi(e.to_integer()) == parity.forbidden()) {
            return Err(fail("support condition violated"));
        }
        Ok(WHForm { series, parity, pole_order })
    }

    /// The `q`-expansion.
    pub fn series(&self) -> &FracSeries {
        &self.series
    }

    /// Weight (always 1).
    pub fn weight(&self) -> i32 {
        1
    }

    /// Plus or minus space.
    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// The `m` of `q^{−m}`.
    pub fn pole_order(&self) -> i64 {
        self.pole_order
    }

    /// `c(n)`, or `None` beyond truncation.
    pub fn coeff(&self, n: i64) -> Option<Rat> {
        self.series.coeff_at(n)
    }

    /// `c(n)`, panicking beyond truncation.
    pub fn c(&self, n: i64) -> Rat {
        self.coeff(n).unwrap_or_else(|| panic!("coefficient {n} of f_{} beyond truncation", self.pole_order))
    }

    /// Exclusive truncation exponent.
    pub fn trunc(&self) -> i64 {
        self.series.trunc().map_or(i64::MAX, |t| t.ceil().to_integer())
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.series.is_integral()
    }

    /// The same form truncated at `order`.
    pub fn truncate(&self, order: i64) -> WHForm {
        WHForm { series: self.series.truncate(qseries::Exp::from_integer(order)), ..self.clone() }
    }

    /// JSON record `{D, m, parity, series}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "D": -LEVEL,
            "m": self.pole_order,
            "parity": self.parity.name(),
            "series": self.series.to_json(),
        })
    }

    /// Inverse of [`to_json`](Self::to_json).
    pub fn from_json(v: &serde_json::Value) -> Result<Self, WhError> {
        let bad = |what: &str| WhError::Unsupported(format!("malformed form record: {what}"));
        let m = v.get("m").and_then(|x| x.as_i64()).ok_or_else(|| bad("m"))?;
        let parity = match v.get("parity").and_then(|x| x.as_str()) {
            Some("plus") => Parity::Plus,
            Some("minus") => Parity::Minus,
            _ => return Err(bad("parity")),
        };
        let series = FracSeries::from_json(v.get("series").ok_or_else(|| bad("series"))?)?;
        WHForm::new(series, parity, m)
    }
}
