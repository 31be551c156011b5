//! Theta series attached to an imaginary quadratic field.
//!
//! * [`theta_ideal`] — the scalar theta series of an ideal class;
//! * [`theta_vector`] — its vector-valued refinement over `L′/L`;
//! * [`genus_eisenstein`] and the Siegel–Weil check relating the two;
//! * [`plus_space_check`] — support conditions from `χ_D`;
//! * [`weil_generators`] — numeric Weil representation matrices;
//! * [`SublatticeData`] — restriction and trace between lattices `M ⊆ L`.

mod fqm;
mod theta;
mod weil;

pub use fqm::{pair, FiniteQuadModule, SublatticeData};
pub use theta::{
    genus_eisenstein, minus_space_check, plus_space_check, representation_counts, siegel_weil_check, siegel_weil_holds,
    theta_ideal, theta_of_form, theta_vector, VVSeries,
};
pub use weil::{mat_adjoint, mat_identity, mat_log2_distance, mat_mul, weil_generators, Matrix, WeilRepMatrices};

use thiserror::Error;

/// Errors from module and vector-series constructors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    /// The quadratic form is not well defined on the group.
    #[error("quadratic form is not well defined modulo the group order")]
    IllDefined,
    /// The bilinear form has a nontrivial radical.
    #[error("bilinear form is degenerate")]
    Degenerate,
    /// Inclusion data or component layout inconsistent with the modules.
    #[error("incompatible quadratic modules")]
    IncompatibleModules,
    /// The vector-valued construction needs an odd fundamental discriminant.
    #[error("discriminant {0} is not odd fundamental")]
    UnsupportedDiscriminant(i64),
}
