//! The weak Jacobi forms `φ₋₂,₁` and `φ₀,₁` from theta quotients.
//!
//! Theta functions carry half-integral powers of `ζ` and eighth powers of
//! `q`, so the construction works with Laurent polynomials keyed by
//! `(8·n, 2·r)` before reading off the integral Jacobi coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use qseries::Rat;

use crate::form::JacobiForm;

/// `Σ c·q^{a/8} ζ^{b/2}` keyed by `(a, b)`, known for `a < limit`.
#[derive(Clone, Debug)]
struct Bivariate {
    terms: BTreeMap<(i64, i64), BigInt>,
    limit: i64,
}

impl Bivariate {
    fn mul(&self, other: &Bivariate, limit: i64) -> Bivariate {
        let mut terms: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                if a1 + a2 < limit {
                    *terms.entry((a1 + a2, b1 + b2)).or_insert_with(BigInt::zero) += c1 * c2;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Bivariate { terms, limit }
    }

    /// Multiplies by a univariate series `Σ u[i]·q^{(i + shift)/8}`.
    fn mul_univariate(&self, u: &[BigInt], shift: i64, limit: i64) -> Bivariate {
        let mut terms: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            for (i, x) in u.iter().enumerate() {
                let e = a + i as i64 + shift;
                if e >= limit {
                    break;
                }
                if !x.is_zero() {
                    *terms.entry((e, *b)).or_insert_with(BigInt::zero) += c * x;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Bivariate { terms, limit }
    }

    fn add(&self, other: &Bivariate) -> Bivariate {
        let limit = self.limit.min(other.limit);
        let mut terms = BTreeMap::new();
        for (k, c) in self.terms.iter().chain(other.terms.iter()) {
            if k.0 < limit {
                *terms.entry(*k).or_insert_with(BigInt::zero) += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Bivariate { terms, limit }
    }

    /// Sets `z = 0`: the univariate coefficients on the `q^{1/8}` grid
    /// starting at exponent 0 (panics on negative exponents).
    fn at_zero(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.limit as usize];
        for ((a, _), c) in &self.terms {
            out[*a as usize] += c;
        }
        out
    }

    fn into_jacobi(self, weight: i32, trunc: i64) -> JacobiForm {
        let rows = self.terms.into_iter().map(|((a, b), c)| {
            assert!(a % 8 == 0 && b % 2 == 0, "non-integral exponent in Jacobi form");
            ((a / 8, b / 2), Rat::from_integer(c))
        });
        JacobiForm::from_rows(weight, 1, rows, trunc).expect("theta quotients satisfy the elliptic law")
    }
}

/// `ϑ_i(τ, z)` for `i = 1..4`, known for `q`-exponents `< limit/8`.
///
/// * `ϑ₁ = Σ (−1)ⁿ q^{(n+½)²/2} ζ^{n+½}`
/// * `ϑ₂ = Σ q^{(n+½)²/2} ζ^{n+½}`
/// * `ϑ₃ = Σ q^{n²/2} ζⁿ`
/// * `ϑ₄ = Σ (−1)ⁿ q^{n²/2} ζⁿ`
fn jacobi_theta(i: u8, limit: i64) -> Bivariate {
    let mut terms = BTreeMap::new();
    let half = matches!(i, 1 | 2);
    let alternating = matches!(i, 1 | 4);
    let mut n = 0i64;
    loop {
        let mut any = false;
        for k in [n, -n - 1] {
            let (a, b) = if half { ((2 * k + 1).pow(2), 2 * k + 1) } else { (4 * k * k, 2 * k) };
            if a < limit {
                any = true;
                let sign = if alternating && k.rem_euclid(2) == 1 { -1 } else { 1 };
                terms.insert((a, b), BigInt::from(sign));
            }
        }
        if !any {
            break;
        }
        n += 1;
    }
    Bivariate { terms, limit }
}

/// Inverse of a univariate series with leading coefficient 1.
fn invert_unit_series(u: &[BigInt]) -> Vec<BigInt> {
    assert!(u[0].is_one(), "leading coefficient must be 1");
    let mut out = vec![BigInt::zero(); u.len()];
    out[0] = BigInt::one();
    for n in 1..u.len() {
        let mut s = BigInt::zero();
        for k in 1..=n {
            if !u[k].is_zero() {
                s += &u[k] * &out[n - k];
            }
        }
        out[n] = -s;
    }
    out
}

/// `Π_{n ≥ 1} (1 − qⁿ)^{−k}` on the `q^{1/8}` grid, `len` terms.
fn inverse_euler_power(k: u32, len: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); len];
    p[0] = BigInt::one();
    let mut n = 8;
    while n < len {
        for _ in 0..k {
            for i in n..len {
                let prev = p[i - n].clone();
                p[i] += prev;
            }
        }
        n += 8;
    }
    p
}

/// `φ₋₂,₁ = ϑ₁(τ, z)²/η(τ)⁶ = (ζ − 2 + ζ⁻¹) + (−2ζ² + 8ζ − 12 + …)q + …`,
/// known for `n < order`.
pub fn phi_m2_1(order: i64) -> JacobiForm {
    let limit = 8 * order;
    // ϑ₁² starts at q^{1/4}; η⁶ = q^{1/4}·Π(1 − qⁿ)⁶
    let t1 = jacobi_theta(1, limit + 2);
    let sq = t1.mul(&t1, limit + 2);
    let inv_eta = inverse_euler_power(6, limit as usize);
    sq.mul_univariate(&inv_eta, -2, limit).into_jacobi(-2, order)
}

/// `φ₀,₁ = 4·Σ_{i=2,3,4} (ϑ_i(τ, z)/ϑ_i(τ, 0))² = (ζ + 10 + ζ⁻¹) + …`,
/// known for `n < order`.
pub fn phi_0_1(order: i64) -> JacobiForm {
    let limit = 8 * order;
    let mut total: Option<Bivariate> = None;
    for i in [2u8, 3, 4] {
        // ϑ₂ starts at q^{1/8}; 4/ϑ₂(τ,0)² = q^{−1/4}/(Σ q^{n(n+1)/2})²
        let extra = if i == 2 { 2 } else { 0 };
        let t = jacobi_theta(i, limit + extra);
        let sq = t.mul(&t, limit + extra);
        let mut at0 = sq.at_zero();
        let term = if i == 2 {
            // ϑ₂(τ,0)² = 4q^{1/4}·(…); drop the q^{1/4} and the factor 4
            let unit: Vec<BigInt> = at0[2..].iter().map(|c| c / 4).collect();
            let inv = invert_unit_series(&unit);
            sq.mul_univariate(&inv, -2, limit)
        } else {
            at0.truncate(limit as usize);
            let inv = invert_unit_series(&at0);
            let four: Vec<BigInt> = inv.iter().map(|c| c * 4).collect();
            sq.mul_univariate(&four, 0, limit)
        };
        total = Some(match total {
            None => term,
            Some(acc) => acc.add(&term),
        });
    }
    total.expect("three theta quotients").into_jacobi(0, order)
}
