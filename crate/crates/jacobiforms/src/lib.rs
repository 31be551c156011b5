//! Weak Jacobi forms of even weight and index 1 generators.
//!
//! * [`phi_m2_1`], [`phi_0_1`] — the generators `φ₋₂,₁` and `φ₀,₁`;
//! * [`JacobiForm::mul`] — products (weights and indices add);
//! * [`theta_decomposition`] / [`recompose`] — the theta expansion over
//!   `ℤ/2m` with `Q(x) = −x²/4m`;
//! * [`pair_with_theta`] and [`fg_pairing`] — pairing with the theta-null
//!   vector, which recovers `φ(τ, 0)`.

mod form;
mod generators;

pub use form::{
    decomposition_module, fg_pairing, pair_with_theta, recompose, theta_decomposition, theta_null_vector, JacobiForm,
};
pub use generators::{phi_0_1, phi_m2_1};

use thiserror::Error;

/// Errors from Jacobi form constructors and operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JacobiError {
    /// Two coefficients with equal `(4nm − r², r mod 2m)` differ.
    #[error("coefficient at (n={n}, r={r}) violates the elliptic transformation law")]
    NotElliptic {
        /// `n` of the offending coefficient.
        n: i64,
        /// `r` of the offending coefficient.
        r: i64,
    },
    /// Weights, indices or layouts do not match.
    #[error("incompatible Jacobi form data")]
    Incompatible,
}

/// `jacobi_mul(a, b) = a·b`.
pub fn jacobi_mul(a: &JacobiForm, b: &JacobiForm) -> JacobiForm {
    a.mul(b)
}
