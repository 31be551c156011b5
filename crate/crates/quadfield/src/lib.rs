//! Imaginary quadratic fields through binary quadratic forms.
//!
//! * [`QuadForm`] with Gauss reduction and unimodular transforms;
//! * [`ClassGroup`] built from reduced forms with Dirichlet composition;
//! * [`kronecker_chi`] — the Kronecker symbol `(D/n)`;
//! * ideal counts `ρ(n, C)` per class and per genus.
//!
//! Forms `[a, b, c]` correspond to ideals `aℤ + ((−b + √D)/2)ℤ`; the
//! embedding convention (which square root of `D`) only permutes a class
//! with its inverse and never changes a count, see [`ClassGroup::count_ideals_in_class`].

mod chi;
mod form;
mod group;

pub use chi::{is_fundamental, jacobi_symbol, kronecker_chi, total_ideal_count};
pub use form::{reduced_forms, QuadForm};
pub use group::{class_group, ClassGroup, IdealClass};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by constructors in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    /// `D` is not a negative discriminant (`D ≡ 0, 1 mod 4`, `D < 0`).
    #[error("{0} is not a negative discriminant")]
    NotADiscriminant(i64),
    /// `D` is a discriminant but not fundamental.
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
}

/// A negative discriminant `D ≡ 0, 1 mod 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Discriminant(i64);

impl Discriminant {
    /// Validates `D < 0` and `D ≡ 0, 1 mod 4`.
    pub fn new(d: i64) -> Result<Self, QuadError> {
        if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
            return Err(QuadError::NotADiscriminant(d));
        }
        Ok(Discriminant(d))
    }

    /// Validates that `D` is a negative fundamental discriminant.
    pub fn fundamental(d: i64) -> Result<Self, QuadError> {
        let disc = Self::new(d)?;
        if !is_fundamental(d) {
            return Err(QuadError::NotFundamental(d));
        }
        Ok(disc)
    }

    /// The integer value `D`.
    pub fn value(self) -> i64 {
        self.0
    }

    /// `|D|`.
    pub fn abs(self) -> u64 {
        self.0.unsigned_abs()
    }

    /// Number of roots of unity `w_k` in the maximal order.
    pub fn units(self) -> u32 {
        match self.0 {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }

    /// `χ_D(n)`.
    pub fn chi(self, n: i64) -> i32 {
        kronecker_chi(self.0, n)
    }

    /// True if `|D|` is prime (then `D` is a prime discriminant with a
    /// single genus).
    pub fn is_prime_discriminant(self) -> bool {
        let n = self.abs();
        n > 2 && (2..).take_while(|p| p * p <= n).all(|p| n % p != 0)
    }
}

impl std::fmt::Display for Discriminant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
