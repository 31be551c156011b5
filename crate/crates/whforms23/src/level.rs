//! The level-23 building blocks: `θ_𝒪`, `g = η(τ)η(23τ)`, the Hauptmodul
//! `H`, the genus Eisenstein series and the powers of `H`.

use qseries::{eta_expansion, Exp, FracSeries, Rat};
use quadfield::{class_group, kronecker_chi};
use thetaseries::{genus_eisenstein, theta_ideal};

/// The level (and `|D|`) these forms live on.
pub const LEVEL: i64 = 23;

/// `χ₋₂₃(n)`, with `χ(−1) = −1`.
pub(crate) fn chi(n: i64) -> i32 {
    kronecker_chi(-LEVEL, n)
}

fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Precomputed series shared by all constructions at a given precision.
///
/// Everything is kept to an internal precision large enough that every
/// spanning-set element with pole order at most `max_pole` is known below
/// `max(order, 2·max_pole + 30) + 6`: forms with poles at both cusps need
/// that many vanishing conditions before a solve is unique.
#[derive(Clone, Debug)]
pub struct Level23 {
    order: i64,
    max_pole: i64,
    theta: FracSeries,
    g: FracSeries,
    g_inv: FracSeries,
    h: FracSeries,
    dh_over_g: FracSeries,
    eisenstein: FracSeries,
    h_powers: Vec<FracSeries>,
}

impl Level23 {
    /// Building blocks for forms known below `order` with pole order at most
    /// `max_pole`.
    pub fn new(order: i64, max_pole: i64) -> Self {
        assert!(order >= 2 && max_pole >= 0, "order ≥ 2 and max_pole ≥ 0 required");
        let internal = order.max(2 * max_pole + 30) + max_pole + 8;
        let group = class_group(-LEVEL).expect("−23 is a discriminant");
        let top = Exp::from_integer(internal + 2);
        let theta = theta_ideal(&group, group.identity(), (internal + 2) as u64);
        let g = eta_expansion(1, top).mul_series(&eta_expansion(LEVEL as u32, top));
        let g_inv = g.inverse().expect("g has leading coefficient 1");
        let h = theta.mul_series(&g_inv).sub_series(&FracSeries::constant(int(3)));
        let dh_over_g = h.q_derivative().mul_series(&g_inv);
        let eisenstein = genus_eisenstein(&group, 0, (internal + 2) as u64);
        let mut h_powers = vec![FracSeries::one()];
        for k in 1..=(max_pole + 2) as usize {
            let next = h_powers[k - 1].mul_series(&h);
            h_powers.push(next);
        }
        Level23 { order, max_pole, theta, g, g_inv, h, dh_over_g, eisenstein, h_powers }
    }

    /// The precision forms built from this context are reported to.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// The largest supported pole order.
    pub fn max_pole(&self) -> i64 {
        self.max_pole
    }

    /// `θ_𝒪 = Σ_{x,y} q^{x² + xy + 6y²}`.
    pub fn theta(&self) -> &FracSeries {
        &self.theta
    }

    /// `g = η(τ)η(23τ) = q − q² − q³ + q⁶ + …`.
    pub fn g(&self) -> &FracSeries {
        &self.g
    }

    /// `1/g`.
    pub fn g_inv(&self) -> &FracSeries {
        &self.g_inv
    }

    /// `H = θ_𝒪/g − 3`.
    pub fn hauptmodul(&self) -> &FracSeries {
        &self.h
    }

    /// `D(H)/g` with `D = q·d/dq`.
    pub fn dh_over_g(&self) -> &FracSeries {
        &self.dh_over_g
    }

    /// The genus Eisenstein series `E = 1 + (2/3)·Σ r(n) qⁿ`.
    pub fn eisenstein(&self) -> &FracSeries {
        &self.eisenstein
    }

    /// `H^k` for `k ≤ max_pole + 2`.
    pub fn h_power(&self, k: usize) -> &FracSeries {
        &self.h_powers[k]
    }
}

/// The Hauptmodul `H = θ_𝒪/g − 3 = q⁻¹ + 4q + 7q² + 13q³ + …`, known
/// below `order`.
pub fn hauptmodul(order: i64) -> FracSeries {
    assert!(order >= 2, "order must be at least 2");
    Level23::new(order, 0).hauptmodul().truncate(Exp::from_integer(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hauptmodul_leading_terms() {
        let h = hauptmodul(12);
        let got: Vec<i64> = (-1..10).map(|n| i64::try_from(h.int_coeff_at(n).unwrap()).unwrap()).collect();
        assert_eq!(got, vec![1, 0, 4, 7, 13, 19, 33, 47, 74, 106, 154]);
        assert_eq!(h.coeff_at(12), None);
    }

    #[test]
    fn eisenstein_is_a_combination_of_g_and_gh() {
        let l = Level23::new(60, 1);
        let rhs = l.g().mul_series(&l.hauptmodul().add_series(&FracSeries::constant(Rat::new(5.into(), 3.into()))));
        assert!(l.eisenstein().sub_series(&rhs).truncate(Exp::from_integer(60)).is_zero_to_trunc());
    }

    #[test]
    fn character_values() {
        assert_eq!(chi(-1), -1);
        assert_eq!(chi(2), 1);
        assert_eq!(chi(5), -1);
        assert_eq!(chi(23), 0);
    }
}
