//! Cycle multiplicities against brute-force ideal counts and the stated
//! closed-form examples.

use cycles::*;
use localinv::diff_set;
use num_rational::Rational64;
use proptest::prelude::*;
use quadfield::{class_group, kronecker_chi, ClassGroup, IdealClass};

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// `ρ(n, C)` by counting representations of `n` by the reduced form of
/// `C` (a form and its inverse represent the same integers).
fn rho_brute(g: &ClassGroup, n: u64, c: IdealClass) -> u64 {
    let f = g.form(c);
    let n = n as i64;
    let bound = (4 * f.c * n / (-f.disc())) as f64;
    let ymax = bound.sqrt() as i64 + 1;
    let xmax = ((4 * f.a * n / (-f.disc())) as f64).sqrt() as i64 + ymax + 1;
    let mut reps = 0u64;
    for y in -ymax..=ymax {
        for x in -xmax..=xmax {
            if f.eval(x, y) == n {
                reps += 1;
            }
        }
    }
    reps / g.units() as u64
}

fn total_ideals(d: i64, n: u64) -> i64 {
    (1..=n).filter(|k| n % k == 0).map(|k| kronecker_chi(d, k as i64) as i64).sum()
}

#[test]
fn brute_force_ideal_counts_agree() {
    for d in [-23i64, -31, -47] {
        let g = class_group(d).unwrap();
        for n in 1..80 {
            for c in g.classes() {
                assert_eq!(g.count_ideals_in_class(n, c), rho_brute(&g, n, c), "D={d} n={n}");
            }
        }
    }
}

#[test]
fn stated_examples() {
    let g = class_group(-23).unwrap();
    let o = g.identity();
    assert_eq!(cycle_multiplicity(&g, r(1, 1), o, o, Labeling::Direct).unwrap(), r(1, 1));
    assert_eq!(cycle_multiplicity(&g, r(5, 23), o, o, Labeling::Direct).unwrap(), r(1, 2));
    assert_eq!(cycle_multiplicity(&g, r(385, 23), o, o, Labeling::Direct).unwrap(), r(0, 1));
    assert_eq!(predicted_valuation(&g, r(1, 1), o, o).unwrap(), r(2, 1));
    assert_eq!(predicted_valuation(&g, r(5, 23), o, o).unwrap(), r(1, 1));
    assert!(matches!(predicted_valuation(&g, r(385, 23), o, o), Err(CycleError::NoSupport { size: 3, .. })));
}

#[test]
fn gate_and_valuation_relation_up_to_500() {
    for d in [-23i64, -31, -47] {
        let g = class_group(d).unwrap();
        let dd = -d;
        for n in 1..=500i64 {
            let m = r(n, dd);
            let diff = diff_set(m, g.discriminant()).unwrap();
            for a in g.classes() {
                let z = cycle_multiplicities(&g, m, a, Labeling::Direct).unwrap();
                if diff.primes.len() != 1 {
                    assert!(z.per_sigma.values().all(|v| *v == r(0, 1)), "D={d} n={n}");
                    continue;
                }
                for b in g.classes() {
                    let v = z.per_sigma[&b];
                    assert!((v * 2).is_integer() && v >= r(0, 1));
                    assert_eq!(v * 2, predicted_valuation(&g, m, a, b).unwrap(), "D={d} n={n}");
                    assert_eq!(v, cycle_multiplicity(&g, m, a, b, Labeling::Inverse).unwrap());
                }
            }
        }
    }
}

#[test]
fn sum_over_classes_counts_all_ideals() {
    for d in [-23i64, -31, -47] {
        let g = class_group(d).unwrap();
        for n in 1..=300i64 {
            let m = r(n, -d);
            let z = cycle_multiplicities(&g, m, g.identity(), Labeling::Direct).unwrap();
            if let Some(p) = z.p {
                let two = if z.o == 0 { r(1, 2) } else { r(1 << (z.o - 1), 1) };
                // the squares of the classes cover Cl_k once (odd class number)
                let expect = two * z.nu * r(total_ideals(d, n as u64 / p), 1);
                assert_eq!(z.total(), expect, "D={d} n={n}");
            }
        }
    }
}

#[test]
fn relabeling_b_is_a_class_translation() {
    let g = class_group(-47).unwrap();
    for n in [5i64, 10, 47, 94, 235] {
        let m = r(n, 47);
        for a in g.classes() {
            for c in g.classes() {
                let za = cycle_multiplicities(&g, m, a, Labeling::Direct).unwrap();
                let zt = cycle_multiplicities(&g, m, g.compose(a, g.inverse(c)), Labeling::Direct).unwrap();
                for b in g.classes() {
                    assert_eq!(za.per_sigma[&g.compose(b, c)], zt.per_sigma[&b]);
                }
            }
        }
    }
}

#[test]
fn telescoping_identity_up_to_500() {
    for d in [-23i64, -31, -47] {
        let g = class_group(d).unwrap();
        let mut checked = 0;
        for n in 1..=500u64 {
            for c in g.classes() {
                if let Some(ok) = telescoping_check(&g, n, c).unwrap() {
                    assert!(ok, "D={d} n={n} class {c:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 100);
    }
    let g = class_group(-23).unwrap();
    assert_eq!(telescoping_check(&g, 25, g.identity()).unwrap(), None);
    assert_eq!(telescoping_check(&g, 5, g.identity()).unwrap(), Some(true));
    assert_eq!(telescoping_check(&g, 125, g.identity()).unwrap(), Some(true));
}

#[test]
fn degrees() {
    let g = class_group(-23).unwrap();
    let f = ResidueDegrees::default();
    let deg1 = degree(&g, r(1, 1), g.identity(), f).unwrap();
    assert_eq!(deg1, Degree { coeff: r(1, 1), prime: Some(23) });
    assert_eq!(degree(&g, r(385, 23), g.identity(), f).unwrap().coeff, r(0, 1));
    // m = 5/23: f₅ = 2, Σ_b = ½·ρ(1, ·) summed = ½
    assert_eq!(degree(&g, r(5, 23), g.identity(), f).unwrap(), Degree { coeff: r(1, 1), prime: Some(5) });
    for n in 1..200 {
        let m = r(n, 23);
        let d0 = degree(&g, m, g.identity(), f).unwrap();
        for a in g.classes() {
            assert_eq!(degree(&g, m, a, f).unwrap(), d0);
        }
    }
}

#[test]
fn degree_series_entries() {
    let g = class_group(-23).unwrap();
    let s = degree_series(&g, g.identity(), r(10, 1), ResidueDegrees::default()).unwrap();
    assert_eq!(s.entries[&r(1, 1)].prime, Some(23));
    for (m, e) in &s.entries {
        let n = (*m * 23).to_integer();
        assert_ne!(kronecker_chi(-23, n), 1);
        let diff = diff_set(*m, g.discriminant()).unwrap();
        if diff.primes.len() >= 3 {
            assert_eq!(e.coeff, r(0, 1));
        }
    }
    assert!(!s.entries.contains_key(&r(2, 23)));
    assert!(s.to_csv().starts_with("m,coeff,p\n"));
    assert_eq!(s.to_json()["entries"].as_array().unwrap().len(), s.entries.len());
}

#[test]
fn composite_discriminants_need_translation_data() {
    let g = class_group(-15).unwrap();
    let o = g.identity();
    assert_eq!(cycle_multiplicity(&g, r(1, 1), o, o, Labeling::Direct), Err(CycleError::CompositeD(-15)));
    let d = g.discriminant();
    let mut seen = 0;
    for n in 1..60i64 {
        let m = r(n, 15);
        let diff = diff_set(m, d).unwrap();
        if diff.primes.len() != 1 || n % diff.primes[0] as i64 != 0 {
            continue;
        }
        let p = diff.primes[0];
        let o_m = localinv::o_count(m, d).unwrap();
        let nu = localinv::nu_p(m, p, d).unwrap();
        let two = if o_m == 0 { r(1, 2) } else { r(1 << (o_m - 1), 1) };
        for c0 in g.classes() {
            let rho = g.count_ideals_in_class(n as u64 / p, c0) as i64;
            assert_eq!(cycle_multiplicity_translated(&g, m, o, o, c0).unwrap(), two * nu * rho, "n={n}");
        }
        seen += 1;
    }
    assert!(seen > 5);
}

proptest! {
    #[test]
    fn multiplicities_are_half_integral_and_vanish_off_support(n in 1i64..2000) {
        let g = class_group(-23).unwrap();
        let m = r(n, 23);
        let z = cycle_multiplicities(&g, m, g.identity(), Labeling::Direct).unwrap();
        let size = diff_set(m, g.discriminant()).unwrap().primes.len();
        prop_assert_eq!(size % 2, 1);
        for v in z.per_sigma.values() {
            prop_assert!((*v * 2).is_integer());
            if size != 1 {
                prop_assert_eq!(*v, r(0, 1));
            }
        }
    }
}
