//! Level-23 forms against printed expansions and independent oracles.

use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use proptest::prelude::*;
use qseries::{Exp, FracSeries, Rat};
use quadfield::{kronecker_chi, Discriminant};
use thetaseries::{minus_space_check, plus_space_check};
use whforms23::*;

fn ints(f: &FracSeries, range: std::ops::Range<i64>) -> Vec<i64> {
    range.map(|n| i64::try_from(f.int_coeff_at(n).unwrap()).unwrap()).collect()
}

fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// One shared factory for the slower tests (forms up to m = 50, known
/// below q^60).
fn factory() -> &'static Mutex<FormFactory> {
    static F: OnceLock<Mutex<FormFactory>> = OnceLock::new();
    F.get_or_init(|| Mutex::new(FormFactory::new(60, 50)))
}

fn valid(m: i64) -> bool {
    kronecker_chi(-23, m) != 1
}

#[test]
fn hauptmodul_expansion() {
    let h = hauptmodul(11);
    assert_eq!(ints(&h, -1..10), vec![1, 0, 4, 7, 13, 19, 33, 47, 74, 106, 154]);
}

/// `g = q·Π(1 − qⁿ)(1 − q^{23n})` by naive polynomial multiplication, and
/// `θ_𝒪 = g·(H + 3)` with `θ_𝒪` from brute-force enumeration of
/// `x² + xy + 6y²`.
#[test]
fn hauptmodul_identity_against_brute_force() {
    let order = 100usize;
    let mut p = vec![0i64; order];
    p[0] = 1;
    for n in 1..order {
        for step in [n, 23 * n] {
            if step < order {
                for i in (step..order).rev() {
                    p[i] -= p[i - step];
                }
            }
        }
    }
    let l = Level23::new(order as i64, 0);
    let g = l.g();
    for (n, c) in p.iter().enumerate().take(order - 1) {
        assert_eq!(g.int_coeff_at(n as i64 + 1).unwrap(), (*c).into(), "g at q^{}", n + 1);
    }
    let mut theta = vec![0i64; order];
    for x in -12i64..=12 {
        for y in -5i64..=5 {
            let v = x * x + x * y + 6 * y * y;
            if (v as usize) < order {
                theta[v as usize] += 1;
            }
        }
    }
    let h = hauptmodul(order as i64);
    let lhs = g.mul_series(&h.add_series(&FracSeries::constant(r(3))));
    assert_eq!(ints(&lhs, 0..order as i64 - 1), theta[..order - 1].to_vec());
}

#[test]
fn plus_forms_match_printed_expansions() {
    let expect: [(i64, [i64; 8]); 3] = [
        (5, [-6, 1, -7, 0, -8, 0, 19, 20]),
        (7, [-4, -10, -5, 0, 8, 0, -31, 35]),
        (10, [-13, -14, 13, 0, 0, 0, 13, -78]),
    ];
    for (m, coeffs) in expect {
        let f = build_fm_plus(m, m + 20).unwrap();
        assert_eq!(ints(f.series(), 2..10), coeffs.to_vec(), "f_{m}");
        let pp: Vec<(Exp, Rat)> = f.series().principal_part().terms().map(|(e, c)| (e, c.clone())).collect();
        assert_eq!(pp, vec![(Exp::from_integer(-m), r(1))]);
        assert_eq!(f.c(0), Rat::zero());
        assert_eq!(f.c(1), Rat::zero());
        assert!(f.is_integral());
        assert!(plus_space_check(f.series(), Discriminant::new(-23).unwrap()));
    }
}

#[test]
fn eisenstein_theta_span_cannot_produce_f5() {
    let l = Level23::new(30, 5);
    let err = build_fm_plus_with(&l, 5, Parity::Plus, SpanningSet::EisensteinTheta).unwrap_err();
    assert!(matches!(err, WhError::SolveFailure { m: 5, .. }), "{err}");
    assert!(build_fm_plus_with(&l, 5, Parity::Plus, SpanningSet::Augmented).is_ok());
}

#[test]
fn obstructed_pole_orders() {
    for m in [1, 2, 3, 4, 6, 24] {
        assert_eq!(build_fm_plus(m, 30).unwrap_err(), WhError::Obstructed(m));
    }
}

#[test]
fn minus_forms_match_printed_expansions() {
    let expect: [(i64, [i64; 13]); 3] = [
        (2, [1, 1, -1, 0, 0, 0, 0, 6, 0, 4, 0, 0, 13]),
        (3, [0, 1, -1, 0, 0, 0, 0, -1, 0, 10, 0, 0, 14]),
        (4, [0, 0, -1, 0, 0, 0, 0, 7, 0, 5, 0, 0, -13]),
    ];
    for (m, coeffs) in expect {
        let f = build_fm_minus(m, 40).unwrap();
        assert_eq!(ints(f.series(), -2..11), coeffs.to_vec(), "f_{m}");
        assert_eq!(f.series().valuation(), Some(Exp::from_integer(-m)));
        assert!(minus_space_check(f.series(), Discriminant::new(-23).unwrap()));
        assert!(f.is_integral());
    }
}

#[test]
fn ladder_agrees_with_direct_solve() {
    for m in [28, 30] {
        let direct = build_fm_plus(m, 50).unwrap();
        let ladder = ladder_fm(m, 50).unwrap();
        assert_eq!(direct, ladder, "m={m}");
        assert!(ladder.is_integral());
        let pp: Vec<Exp> = ladder.series().principal_part().terms().map(|(e, _)| e).collect();
        assert_eq!(pp, vec![Exp::from_integer(-m)]);
    }
}

#[test]
fn duality_as_stated_fails_only_in_the_middle_sign() {
    let mut f = factory().lock().unwrap();
    let rep = duality_report(&mut f, 7).unwrap();
    assert!(!rep.stated_holds());
    let e3 = &rep.entries[1];
    assert_eq!((e3.n, e3.c_m_n.clone(), e3.c_n_m.clone()), (3, r(-10), r(10)));
    assert!(rep.entries[0].stated_holds() && rep.entries[2].stated_holds());
    let rep5 = duality_report(&mut f, 5).unwrap();
    assert_eq!((rep5.entries[0].c_m_n.clone(), rep5.entries[0].c_n_m.clone()), (r(-6), r(6)));
    assert_eq!((rep5.entries[2].c_m_n.clone(), rep5.entries[2].c_n_m.clone()), (r(-7), r(7)));
}

#[test]
fn corrected_duality_holds_up_to_fifty() {
    let mut f = factory().lock().unwrap();
    for m in (5..=50).filter(|m| valid(*m)) {
        let rep = duality_report(&mut f, m).unwrap();
        assert!(rep.corrected_holds(), "m={m}: {rep:?}");
    }
}

#[test]
fn duality_check_entry_point() {
    assert!(!duality_check(5, 30).unwrap());
}

#[test]
fn principal_part_for_m5() {
    let f = build_fm_plus(5, 30).unwrap();
    let t = tensor_principal_part(&f).unwrap();
    let rows: Vec<(i64, Rat)> = t.as_map().into_iter().collect();
    assert_eq!(rows, vec![(7, r(-7)), (11, r(1)), (15, r(-6)), (20, r(10)), (43, r(1))]);
    assert!(t.constant().is_zero());
    assert!(t.correction().is_none());
    assert_eq!(t.entries()[&43].residue, 7);
}

#[test]
fn printed_table_agrees_until_m17() {
    let mut f = factory().lock().unwrap();
    for m in (5..=30).filter(|m| valid(*m) && *m != 23) {
        let fm = f.plus(m).unwrap();
        let t = tensor_principal_part(&fm).unwrap();
        assert!(t.constant().is_zero() && t.is_integral(), "m={m}");
        let printed = printed_table(&fm);
        if m <= 17 {
            assert_eq!(t.as_map(), printed, "m={m}");
        } else {
            // the extra rows come from −64ζ^{±1}q and 108q in φ₀,₁
            let mut extra = t.as_map();
            for (d, c) in &printed {
                *extra.entry(*d).or_insert_with(Rat::zero) -= c;
            }
            extra.retain(|_, c| !c.is_zero());
            let mut expect = std::collections::BTreeMap::new();
            expect.insert(4 * m - 69, r(-64));
            if m > 23 {
                expect.insert(4 * m - 92, r(108));
            }
            assert_eq!(extra, expect, "m={m}");
        }
    }
}

#[test]
fn m23_needs_the_constant_term_correction() {
    let mut f = factory().lock().unwrap();
    let f23 = f.plus(23).unwrap();
    let t = tensor_principal_part(&f23).unwrap();
    assert!(t.constant().is_zero());
    assert_eq!(t.correction(), Some(&Rat::new(9.into(), 25679.into())));
    assert!(!t.is_integral());
    assert_eq!(t.get(92), Rat::new(513796.into(), 25679.into()));
    assert_eq!(t.get(23), Rat::new((-513778).into(), 25679.into()));
    assert_eq!(t.entries().keys().max(), Some(&207));
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("whforms23-cache-{}", std::process::id()));
    let cache = FormCache::new(&dir);
    let f = build_fm_plus(7, 30).unwrap();
    assert!(cache.load(7, Parity::Plus, 30).is_none());
    cache.store(&f, 30).unwrap();
    assert_eq!(cache.load(7, Parity::Plus, 30), Some(f));
    assert!(cache.load(7, Parity::Plus, 40).is_none());
    std::fs::remove_dir_all(dir).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Every built plus form satisfies its defining conditions, checked by
    /// an independent support test.
    #[test]
    fn plus_forms_are_certified(m in 5i64..=46) {
        prop_assume!(valid(m));
        let f = factory().lock().unwrap().plus(m).unwrap();
        prop_assert!(plus_space_check(f.series(), Discriminant::new(-23).unwrap()));
        prop_assert!(f.is_integral());
        prop_assert_eq!(f.series().valuation(), Some(Exp::from_integer(-m)));
        for n in (1 - m)..=1 {
            prop_assert!(f.c(n).is_zero());
        }
        prop_assert_eq!(f.trunc(), 60);
    }
}
