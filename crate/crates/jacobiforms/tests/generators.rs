//! The index-1 generators against an independent product-formula oracle,
//! plus structural identities of products and theta decompositions.

use std::collections::BTreeMap;

use jacobiforms::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qseries::{Exp, FracSeries, Rat};

/// Laurent polynomials in `(q, ζ)` with integral exponents, truncated in `q`.
type Poly = BTreeMap<(i64, i64), i128>;

fn pmul(a: &Poly, b: &Poly, order: i64) -> Poly {
    let mut out = Poly::new();
    for ((n1, r1), c1) in a {
        for ((n2, r2), c2) in b {
            if n1 + n2 < order {
                *out.entry((n1 + n2, r1 + r2)).or_insert(0) += c1 * c2;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn padd(a: &Poly, b: &Poly, k: i128) -> Poly {
    let mut out = a.clone();
    for (key, c) in b {
        *out.entry(*key).or_insert(0) += k * c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn one() -> Poly {
    Poly::from([((0, 0), 1)])
}

/// `Π = Π_n (1 − ζqⁿ)²(1 − ζ⁻¹qⁿ)²/(1 − qⁿ)⁴`.
fn product_pi(order: i64) -> Poly {
    let mut p = one();
    for n in 1..order {
        let fac_pos = Poly::from([((0, 0), 1), ((n, 1), -1)]);
        let fac_neg = Poly::from([((0, 0), 1), ((n, -1), -1)]);
        for _ in 0..2 {
            p = pmul(&p, &fac_pos, order);
            p = pmul(&p, &fac_neg, order);
        }
        // 1/(1 − qⁿ) = Σ q^{kn}
        let geo: Poly = (0..).map(|k| k * n).take_while(|e| *e < order).map(|e| ((e, 0), 1)).collect();
        for _ in 0..4 {
            p = pmul(&p, &geo, order);
        }
    }
    p
}

/// `φ₋₂,₁ = (ζ − 2 + ζ⁻¹)Π` and
/// `φ₀,₁ = φ₋₂,₁ + 12Π + 12·(Σ_n Σ_{d|n} d(ζᵈ − 2 + ζ⁻ᵈ)qⁿ)·φ₋₂,₁`.
fn oracle(order: i64) -> (Poly, Poly) {
    let pi = product_pi(order);
    let x = Poly::from([((0, 1), 1), ((0, 0), -2), ((0, -1), 1)]);
    let f = pmul(&x, &pi, order);
    let mut wp = Poly::new();
    for n in 1..order {
        for d in (1..=n).filter(|d| n % d == 0) {
            *wp.entry((n, d)).or_insert(0) += d as i128;
            *wp.entry((n, 0)).or_insert(0) -= 2 * d as i128;
            *wp.entry((n, -d)).or_insert(0) += d as i128;
        }
    }
    let g = padd(&padd(&f, &pi, 12), &pmul(&wp, &f, order), 12);
    (f, g)
}

fn as_poly(phi: &JacobiForm) -> Poly {
    phi.rows()
        .into_iter()
        .map(|((n, r), c)| {
            assert!(c.is_integer());
            ((n, r), i128::try_from(c.to_integer()).unwrap())
        })
        .collect()
}

fn row(phi: &JacobiForm, n: i64) -> Vec<i64> {
    phi.row(n).into_iter().filter(|(r, _)| *r <= 0).map(|(_, c)| i64::try_from(c.to_integer()).unwrap()).collect()
}

#[test]
fn generators_match_the_product_formula() {
    let order = 10;
    let (f, g) = oracle(order);
    assert_eq!(as_poly(&phi_m2_1(order)), f);
    assert_eq!(as_poly(&phi_0_1(order)), g);
}

#[test]
fn known_rows() {
    let g = phi_0_1(4);
    assert_eq!(row(&g, 0), vec![1, 10]);
    assert_eq!(row(&g, 1), vec![10, -64, 108]);
    assert_eq!(row(&g, 2), vec![1, 108, -513, 808]);
    let f = phi_m2_1(4);
    assert_eq!(row(&f, 0), vec![1, -2]);
    assert_eq!(row(&f, 1), vec![-2, 8, -12]);
    assert_eq!(row(&f, 2), vec![1, -12, 39, -56]);
}

#[test]
fn specializations_at_zero() {
    let order = 12;
    let g0 = phi_0_1(order).specialize_z0();
    let f0 = phi_m2_1(order).specialize_z0();
    assert!(g0.agrees_with(&FracSeries::constant(Rat::from_integer(12.into()))));
    assert!(f0.is_zero_to_trunc());
}

#[test]
fn symmetry_and_weights() {
    for phi in [phi_0_1(8), phi_m2_1(8)] {
        assert!(phi.is_even());
        assert_eq!(phi.index(), 1);
    }
    assert_eq!(phi_m2_1(3).weight(), -2);
    assert_eq!(phi_0_1(3).weight(), 0);
}

#[test]
fn squares_have_index_two() {
    let g2 = phi_0_1(6).pow(2);
    assert_eq!(g2.index(), 2);
    assert_eq!(g2.coeff(0, 0), Some(Rat::from_integer(102.into())));
    let f2 = phi_m2_1(6).pow(2);
    assert_eq!((f2.index(), f2.weight()), (2, -4));
    // (ζ − 2 + ζ⁻¹)² = ζ² − 4ζ + 6 − 4ζ⁻¹ + ζ⁻²
    let r0: Vec<i64> = f2.row(0).into_iter().map(|(_, c)| i64::try_from(c.to_integer()).unwrap()).collect();
    assert_eq!(r0, vec![1, -4, 6, -4, 1]);
    // the product computed independently
    let (f, _) = oracle(6);
    assert_eq!(as_poly(&f2), pmul(&f, &f, 6));
}

#[test]
fn theta_pairing_recovers_the_specialization() {
    for (a, j) in [(1u32, 0u32), (1, 1), (2, 0), (2, 1), (2, 2), (3, 1)] {
        let p = fg_pairing(a, j, 8).unwrap();
        let expect = if j == 0 { Rat::from_integer(12i64.pow(a).into()) } else { Rat::zero() };
        assert!(p.agrees_with(&FracSeries::constant(expect)), "A={a} j={j}");
    }
    assert!(fg_pairing(1, 2, 4).is_err());
}

#[test]
fn elliptic_law_is_enforced() {
    let rows = vec![((0, 1), Rat::one()), ((2, 3), Rat::from_integer(2.into()))];
    assert_eq!(JacobiForm::from_rows(0, 1, rows, 3).unwrap_err(), JacobiError::NotElliptic { n: 2, r: 3 });
}

#[test]
fn incompatible_sums_are_rejected() {
    assert_eq!(phi_0_1(3).add(&phi_m2_1(3)).unwrap_err(), JacobiError::Incompatible);
}

#[test]
fn decomposition_of_phi_0_1_is_symmetric() {
    let h = theta_decomposition(&phi_0_1(6));
    assert!(h.is_symmetric());
    assert_eq!(h.module(), &decomposition_module(1));
    // h₁ starts at q^{−1/4} with coefficient 1
    let first = h.component(1).terms().next().unwrap();
    assert_eq!(first, (Exp::new(-1, 4), &Rat::one()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_round_trips(i in 0u32..3, k in 0u32..3, c in -5i64..5) {
        prop_assume!(i + k > 0);
        let order = 5;
        let f = phi_m2_1(order).pow(i.max(1));
        let phi = if k == 0 { f } else { f.mul(&phi_0_1(order).pow(k)) };
        let phi = phi.scale(&Rat::from_integer(c.into()));
        let h = theta_decomposition(&phi);
        let back = recompose(&h, phi.weight()).unwrap();
        prop_assert_eq!(back.rows(), phi.rows());
        prop_assert_eq!(back.index(), phi.index());
    }
}
