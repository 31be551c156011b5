//! Numeric evaluation of q-series at points of the upper half-plane.

use astro_float::BigFloat;

use crate::bigcomplex::{real, BigComplex};
use crate::error::SeriesError;
use crate::series::FracSeries;
use crate::Exp;

/// Result of evaluating a series.
#[derive(Clone, Debug)]
pub struct Evaluation {
    /// The value of the truncated sum.
    pub value: BigComplex,
    /// Base-2 logarithm of the estimated truncation tail (`-inf` for exact
    /// series).
    pub tail_log2: f64,
}

/// A series with its coefficients converted once to floating point, for
/// repeated evaluation at many points.
#[derive(Clone, Debug)]
pub struct PreparedSeries {
    /// Exponent of the first stored coefficient.
    first: Exp,
    denom: i64,
    coeffs: Vec<BigFloat>,
    exact: bool,
    /// Largest |coefficient| over the last half of the known terms, used by
    /// the tail estimate.
    tail_scale: f64,
    prec: usize,
}

impl PreparedSeries {
    /// Converts the coefficients of `s` to `prec`-bit floats.
    pub fn new(s: &FracSeries, prec: usize) -> Self {
        let (first, denom, coeffs) = s.dense();
        let half = coeffs.len() / 2;
        let tail_scale = coeffs[half..]
            .iter()
            .map(|c| num_traits::ToPrimitive::to_f64(&num_traits::Signed::abs(c)).unwrap_or(f64::MAX))
            .fold(0.0f64, f64::max);
        PreparedSeries {
            first,
            denom,
            coeffs: coeffs.iter().map(|c| real::from_rat(c, prec)).collect(),
            exact: s.is_exact(),
            tail_scale,
            prec,
        }
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// True if no terms are stored.
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Evaluates `Σ c·e^{2πi·e·τ}`.
    ///
    /// Errors with `InsufficientConvergence` if `|e^{2πiτ}| > 0.9` or if the
    /// estimated tail exceeds `2^{−precision/2}`.  The tail estimate assumes
    /// at most quadratic growth of the coefficients beyond the truncation,
    /// relative to the largest coefficient in the second half of the known
    /// range.
    pub fn evaluate(&self, tau: &BigComplex) -> Result<Evaluation, SeriesError> {
        if !tau.im_is_positive() {
            return Err(SeriesError::NotInUpperHalfPlane);
        }
        let p = self.prec.min(tau.precision());
        let tau = tau.with_precision(p + 32);
        let y = real::to_f64(tau.im());
        let q_abs = (-2.0 * std::f64::consts::PI * y).exp();
        let n = self.coeffs.len() as f64;
        let tail_log2 = if self.exact || self.coeffs.is_empty() {
            f64::NEG_INFINITY
        } else {
            // |q_d|^{N}·N²·scale/(1 − |q_d|) in log2, with q_d = q^{1/denom}
            let qd_log2 = -2.0 * std::f64::consts::PI * y / self.denom as f64 / std::f64::consts::LN_2;
            let qd = qd_log2.exp2();
            let lead_exp: f64 = (*self.first.numer() as f64) / (*self.first.denom() as f64);
            let end_exp = lead_exp + n / self.denom as f64;
            let scale = self.tail_scale.max(1.0);
            end_exp * (-2.0 * std::f64::consts::PI * y / std::f64::consts::LN_2)
                + 2.0 * (n + 1.0).log2()
                + scale.log2()
                - (1.0 - qd).max(1e-300).log2()
        };
        if q_abs > 0.9 || tail_log2 > -(p as f64) / 2.0 {
            return Err(SeriesError::InsufficientConvergence { q_abs, tail_log2 });
        }
        let qd = tau.mul(&BigComplex::from_rats(
            &crate::Rat::new(1.into(), self.denom.into()),
            &crate::Rat::from_integer(0.into()),
            p + 32,
        ));
        let step = qd.e2pii();
        let mut acc = BigComplex::zero(p + 32);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&step).add(&BigComplex::from_real(c.clone(), p + 32));
        }
        // prefactor e^{2πi·first·τ}
        let lead = tau.mul(&BigComplex::from_rats(
            &crate::Rat::new((*self.first.numer()).into(), (*self.first.denom()).into()),
            &crate::Rat::from_integer(0.into()),
            p + 32,
        ));
        let value = acc.mul(&lead.e2pii()).with_precision(p);
        Ok(Evaluation { value, tail_log2 })
    }
}

/// Evaluates a series at `tau` with `precision` bits (see
/// [`PreparedSeries::evaluate`]).
pub fn evaluate_series(s: &FracSeries, tau: &BigComplex, precision: usize) -> Result<Evaluation, SeriesError> {
    PreparedSeries::new(s, precision + 32).evaluate(&tau.with_precision(precision + 32)).map(|mut e| {
        e.value = e.value.with_precision(precision);
        e
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Exp, Rat};
    use num_bigint::BigInt;

    fn tau_i(y: i64, p: usize) -> BigComplex {
        BigComplex::from_i64(y, p).mul(&BigComplex::i(p))
    }

    #[test]
    fn constant_series() {
        let v = evaluate_series(&FracSeries::one(), &tau_i(1, 256), 256).unwrap();
        assert!(v.value.sub(&BigComplex::one(256)).is_below_pow2(250));
    }

    #[test]
    fn inverse_q_at_i() {
        let s = FracSeries::monomial(Rat::from_integer(BigInt::from(1)), Exp::from_integer(-1));
        let v = evaluate_series(&s, &tau_i(1, 256), 256).unwrap();
        let (re, _) = v.value.to_f64();
        assert!((re - 535.491_655_524_764_6).abs() < 1e-9);
    }

    #[test]
    fn fractional_exponents() {
        // q^{1/2} at τ = i is e^{−π}
        let s = FracSeries::monomial(Rat::from_integer(BigInt::from(1)), Exp::new(1, 2));
        let v = evaluate_series(&s, &tau_i(1, 256), 256).unwrap();
        assert!((v.value.to_f64().0 - (-std::f64::consts::PI).exp()).abs() < 1e-15);
    }

    #[test]
    fn refuses_points_near_the_real_axis() {
        let s = FracSeries::from_ints(0, &[1, 1, 1], false);
        let tau = BigComplex::from_rats(&Rat::from_integer(0.into()), &Rat::new(1.into(), 100.into()), 128);
        assert!(matches!(evaluate_series(&s, &tau, 128), Err(SeriesError::InsufficientConvergence { .. })));
    }

    #[test]
    fn precision_doubling_agrees() {
        let eta = crate::eta_expansion(1, Exp::from_integer(200));
        let tau = BigComplex::from_rats(&Rat::new(1.into(), 7.into()), &Rat::new(5.into(), 4.into()), 512);
        let a = evaluate_series(&eta, &tau, 128).unwrap().value;
        let b = evaluate_series(&eta, &tau, 256).unwrap().value;
        assert!(a.with_precision(256).sub(&b).is_below_pow2(120));
    }
}
