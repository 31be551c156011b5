//! The Dedekind eta function, the discriminant Δ and the j-invariant as
//! exact q-series.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::series::FracSeries;
use crate::{Exp, Rat};

/// `σ_k(n) = Σ_{d | n} d^k` for `n ≥ 1`.
pub fn divisor_sigma(k: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `η(scale·τ) = q^{scale/24} ∏_{n≥1} (1 − q^{scale·n})`, truncated at the
/// exponent `order`.
///
/// Computed from Euler's pentagonal number theorem,
/// `η(τ) = Σ_{j∈ℤ} (−1)^j q^{(6j−1)²/24}`.
pub fn eta_expansion(scale: u32, order: Exp) -> FracSeries {
    let s = scale as i64;
    assert!(order > Exp::new(s, 24), "order must exceed the leading exponent");
    let mut terms = Vec::new();
    // exponent s·(6j−1)²/24 grows in |j|; walk both directions
    for dir in [1i64, -1] {
        let mut j = if dir == 1 { 0 } else { -1 };
        loop {
            let t = 6 * j - 1;
            let e = Exp::new(s * t * t, 24);
            if e >= order {
                break;
            }
            let sign = if j.rem_euclid(2) == 0 { 1 } else { -1 };
            terms.push((e, Rat::from_integer(BigInt::from(sign))));
            j += dir;
        }
    }
    FracSeries::from_terms(terms, Some(order))
}

/// The pair `(Δ, j)` truncated at the integer exponent `order`:
/// `Δ = η²⁴ = q − 24q² + …` and `j = E₄³/Δ = q⁻¹ + 744 + 196884q + …`.
///
/// `E₄ = 1 + 240 Σ σ₃(n) qⁿ` is taken from its divisor-sum expansion.
pub fn delta_j_expansions(order: i64) -> (FracSeries, FracSeries) {
    assert!(order >= 2, "order must be at least 2");
    // Δ needs one extra term so that j = E₄³/Δ is known below `order`.
    let eta = eta_expansion(1, Exp::new(1, 24) + Exp::from_integer(order + 1));
    let delta = eta.pow(24).expect("η has a unit leading coefficient");
    let mut e4 = vec![Rat::from_integer(BigInt::from(1))];
    for n in 1..(order + 2) as u64 {
        e4.push(Rat::from_integer(divisor_sigma(3, n) * 240));
    }
    let e4 = FracSeries::from_dense(1, Exp::zero(), e4, Some(Exp::from_integer(order + 2)));
    let e4_cubed = e4.pow(3).expect("non-negative power");
    let j = e4_cubed.div_series(&delta).expect("Δ has leading coefficient 1").truncate(Exp::from_integer(order));
    (delta.truncate(Exp::from_integer(order)), j)
}
