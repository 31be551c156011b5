//! End-to-end verification of the factorization of CM values of
//! Borcherds products on `X₀(23)⁺`.
//!
//! For each admissible index `m` the pipeline builds the weakly holomorphic
//! form `f_m`, reads the principal part `C(d)` of its Jacobi lift, and
//! assembles `R_m(x) = ∏_d P_d(x)^{C(d)}` from Heegner polynomials.  Two
//! disjoint computations are then compared:
//!
//! * the **analytic side** takes the exact norm of `R_m` over the roots of
//!   the cubic `P_min` of `H₂₃(z₂₃)` through resultants, factors it, and
//!   evaluates `−(1/12)·log|R_m(xᵢ)|` at each root numerically;
//! * the **arithmetic side** computes the special-cycle multiplicities
//!   `2^{o−1}·ν_p·ρ` from local invariants and ideal counts only.
//!
//! The theorem being checked says the prime support and exponents agree,
//! with a single constant linking them.

pub mod config;
pub mod factor;
pub mod pipeline;
pub mod report;

pub use config::{ConventionChoice, VerifyConfig};
pub use factor::{factor, Factorization, TRIAL_DIVISION_BOUND};
pub use pipeline::{
    AnalyticSide, ArithmeticSide, CacheStats, ConventionResolution, FactorRow, Perturbation, Pinned, Pipeline,
};
pub use report::{Checks, Report, VerificationRecord};

/// Errors of the verification pipeline.
#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    /// A malformed configuration value.
    #[error("configuration: {0}")]
    Config(String),
    /// Only the discriminant `−23` has the full pipeline.
    #[error("discriminant {0} is not supported by the verification pipeline (only −23)")]
    UnsupportedDiscriminant(i64),
    /// `χ₋₂₃(m) = 1`: no form `f_m` exists.
    #[error("index m = {0} is not admissible (χ(m) = 1 or m < 1)")]
    InvalidIndex(i64),
    /// A root of `P_min` is a zero or pole of a stripped `P_d`.
    #[error("m = {m}: P_{d} vanishes at a root of the CM minimal polynomial (improper intersection)")]
    PoleHit {
        /// The index.
        m: i64,
        /// The offending discriminant magnitude.
        d: i64,
    },
    /// A perturbation names a coefficient outside the form's support.
    #[error("perturbation: {0}")]
    Perturbation(String),
    /// Forms could not be built.
    #[error(transparent)]
    Form(#[from] whforms23::WhError),
    /// Heegner polynomials could not be computed.
    #[error(transparent)]
    Heegner(#[from] heegner::HeegnerError),
    /// Cycle multiplicities could not be computed.
    #[error(transparent)]
    Cycle(#[from] cycles::CycleError),
    /// Class group construction failed.
    #[error(transparent)]
    Quad(#[from] quadfield::QuadError),
    /// Report output failed.
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// CSV output failed.
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
