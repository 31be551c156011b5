//! High-precision values of `H(τ) = θ_𝒪(τ)/(η(τ)η(23τ)) − 3`.
//!
//! Both numerator and denominator are lacunary with small coefficients, so
//! they are evaluated directly rather than through the `q`-expansion of
//! `H`, whose coefficients grow exponentially.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use qseries::{BigComplex, Exp, FracSeries, PreparedSeries, Rat};

use crate::domain::{reduce_with_word, Reduction};
use crate::{CMContext, HeegnerError, LEVEL};

/// The constant `3` in `H = θ_𝒪/g − 3`, which makes the constant term of
/// `H` vanish.
pub const HAUPTMODUL_SHIFT: i64 = 3;

/// Extra bits beyond the working precision required of the truncation
/// tail.
const TAIL_GUARD_BITS: f64 = 64.0;

/// `θ_𝒪 = Σ q^{x² + xy + 6y²}` and `Σ (−1)ᵏ q^{k(3k−1)/2}` truncated at a
/// common order, prepared at one precision.
struct Prepared {
    theta: PreparedSeries,
    pentagonal: PreparedSeries,
}

/// Representation numbers of `x² + xy + 6y²` below `order`.
fn theta_counts(order: usize) -> Vec<i64> {
    let mut counts = vec![0i64; order];
    let n = order as i64;
    let y_max = ((4 * n) as f64 / LEVEL as f64).sqrt() as i64 + 1;
    let x_max = (n as f64).sqrt() as i64 + y_max + 1;
    for y in -y_max..=y_max {
        for x in -x_max..=x_max {
            let v = x * x + x * y + 6 * y * y;
            if v < n {
                counts[v as usize] += 1;
            }
        }
    }
    counts
}

fn pentagonal_terms(order: usize) -> Vec<(Exp, Rat)> {
    let n = order as i64;
    let mut out = Vec::new();
    let mut k = 0i64;
    loop {
        let mut any = false;
        for j in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = j * (3 * j - 1) / 2;
            if e < n {
                any = true;
                let sign = if j.rem_euclid(2) == 0 { 1 } else { -1 };
                out.push((Exp::from_integer(e), Rat::from_integer(sign.into())));
            }
        }
        if !any {
            return out;
        }
        k += 1;
    }
}

fn prepared(order: usize, prec: usize) -> Arc<Prepared> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Prepared>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache lock").get(&(order, prec)) {
        return p.clone();
    }
    let trunc = Some(Exp::from_integer(order as i64));
    let theta = FracSeries::from_terms(
        theta_counts(order)
            .into_iter()
            .enumerate()
            .map(|(n, c)| (Exp::from_integer(n as i64), Rat::from_integer(c.into()))),
        trunc,
    );
    let pent = FracSeries::from_terms(pentagonal_terms(order), trunc);
    let p = Arc::new(Prepared { theta: PreparedSeries::new(&theta, prec), pentagonal: PreparedSeries::new(&pent, prec) });
    cache.lock().expect("cache lock").insert((order, prec), p.clone());
    p
}

/// A value of `H` with the data used to compute it.
#[derive(Clone, Debug)]
pub struct HValue {
    /// `H(τ)`.
    pub value: BigComplex,
    /// The reduction applied before evaluating.
    pub reduction: Reduction,
    /// Number of `q`-exponents used.
    pub series_order: usize,
    /// True if the reduced point has `|q|` above the context's bound, so
    /// the series order was raised instead.
    pub stuck: bool,
}

/// [`eval_h23`] with the reduction word, series order and whether the
/// `|q|` bound was met.
///
/// When no move reaches `|q| ≤ q_bound` the evaluation continues at the
/// best point reached with a series order large enough that the tail is
/// below `2^{−precision − 64}`.
pub fn eval_h23_detailed(tau: &BigComplex, ctx: &CMContext) -> Result<HValue, HeegnerError> {
    let prec = ctx.precision + 32;
    let reduction = reduce_with_word(&tau.with_precision(prec))?;
    let stuck = reduction.q_abs > ctx.q_bound;
    let needed = ((ctx.precision as f64 + TAIL_GUARD_BITS) / -reduction.q_abs.log2()).ceil() as usize;
    let series_order = ctx.series_order.max(needed).div_ceil(100) * 100;
    let ser = prepared(series_order, prec);
    let t = &reduction.tau;
    let theta = ser.theta.evaluate(t)?.value;
    let e1 = ser.pentagonal.evaluate(t)?.value;
    let t23 = t.mul(&BigComplex::from_i64(LEVEL, prec));
    let e23 = ser.pentagonal.evaluate(&t23)?.value;
    let g = t.e2pii().mul(&e1).mul(&e23);
    let value = theta.div(&g).sub(&BigComplex::from_i64(HAUPTMODUL_SHIFT, prec)).with_precision(ctx.precision);
    Ok(HValue { value, reduction, series_order, stuck })
}

/// `H(τ) = θ_𝒪(τ)/(η(τ)η(23τ)) − 3` at `ctx.precision` bits, evaluated
/// after moving `τ` by `Γ₀(23)*` (under which `H` is invariant).
pub fn eval_h23(tau: &BigComplex, ctx: &CMContext) -> Result<BigComplex, HeegnerError> {
    eval_h23_detailed(tau, ctx).map(|v| v.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_counts_match_known_coefficients() {
        // θ_𝒪 = 1 + 2q + 2q⁴ + 4q⁶ + 4q⁸ + 2q⁹ + …
        assert_eq!(theta_counts(10), vec![1, 2, 0, 0, 2, 0, 4, 0, 4, 2]);
    }

    #[test]
    fn pentagonal_exponents() {
        let e: Vec<i64> = pentagonal_terms(30).iter().map(|(e, _)| e.to_integer()).collect();
        assert_eq!(e, vec![0, 1, 2, 5, 7, 12, 15, 22, 26]);
    }
}
