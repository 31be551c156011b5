//! Cross-checks of theta series, Eisenstein series, Weil matrices and the
//! restriction / trace maps.

use num_traits::One;
use proptest::prelude::*;
use qseries::{eta_expansion, Exp, FracSeries, Rat};
use quadfield::{class_group, is_fundamental, Discriminant};
use thetaseries::*;

fn odd_fundamental_range() -> Vec<i64> {
    (3..100).map(|n| -n).filter(|d| d % 2 != 0 && is_fundamental(*d)).collect()
}

#[test]
fn siegel_weil_for_all_small_odd_discriminants() {
    let ds = odd_fundamental_range();
    assert!(ds.len() >= 20);
    for d in ds {
        let g = class_group(d).unwrap();
        assert!(siegel_weil_check(&g, 100), "D={d}");
    }
}

#[test]
fn class_thetas_count_ideals_of_inverse_class() {
    for d in [-23i64, -31, -47, -15] {
        let g = class_group(d).unwrap();
        for c in g.classes() {
            let th = theta_ideal(&g, c, 120);
            for n in 1..120u64 {
                let expect = g.units() as u64 * g.count_ideals_in_class(n, g.inverse(c));
                assert_eq!(th.coeff_at(n as i64).unwrap(), Rat::from_integer((expect as i64).into()), "D={d} n={n}");
            }
        }
    }
}

#[test]
fn vector_theta_collapses_to_scalar_theta() {
    for d in [-23i64, -31] {
        let g = class_group(d).unwrap();
        for c in g.classes() {
            let v = theta_vector(&g, c, Exp::new(50, -d)).unwrap();
            assert!(v.is_symmetric());
            assert!(v.exponents_match(1));
            let collapsed = v.collapse().rescale(Exp::from_integer(-d));
            assert_eq!(collapsed, theta_ideal(&g, c, 50), "D={d} class {c:?}");
        }
    }
}

#[test]
fn principal_genus_vectors_share_one_module() {
    let g = class_group(-23).unwrap();
    let m0 = theta_vector(&g, g.identity(), Exp::one()).unwrap().module().clone();
    for c in g.classes() {
        assert_eq!(theta_vector(&g, c, Exp::one()).unwrap().module(), &m0);
    }
}

#[test]
fn eta_product_lies_in_plus_space() {
    let d = Discriminant::fundamental(-23).unwrap();
    let order = Exp::from_integer(300);
    let g = eta_expansion(1, order).mul_series(&eta_expansion(23, order));
    assert!(plus_space_check(&g, d));
    let support: Vec<i64> = g.terms().take(6).map(|(e, _)| e.to_integer()).collect();
    assert_eq!(support, vec![1, 2, 3, 6, 8, 13]);
}

fn weil_relations(m: &FiniteQuadModule) {
    let prec = 256;
    let sig = m.signature_mod8();
    let w = weil_generators(m, sig, prec);
    let n = m.order() as usize;
    let s2 = mat_mul(&w.s_matrix, &w.s_matrix);
    let st = mat_mul(&w.s_matrix, &w.t_matrix);
    let st3 = mat_mul(&mat_mul(&st, &st), &st);
    let tol = -133.0; // 10^-40 ≈ 2^-132.9
    assert!(mat_log2_distance(&s2, &w.expected_s_squared()) < tol, "S² on order {n}");
    assert!(mat_log2_distance(&st3, &s2) < tol, "(ST)³ on order {n}");
    let unit = mat_mul(&w.s_matrix, &mat_adjoint(&w.s_matrix));
    assert!(mat_log2_distance(&unit, &mat_identity(n, prec + 16)) < tol, "unitarity on order {n}");
    for mu in 0..n {
        for nu in 0..n {
            assert!(w.s_matrix[mu][nu].log2_dist(&w.s_matrix[nu][mu]) < tol);
        }
    }
}

#[test]
fn weil_matrices_satisfy_the_metaplectic_relations() {
    weil_relations(&FiniteQuadModule::cyclic(2, Exp::new(1, 4)).unwrap());
    weil_relations(&FiniteQuadModule::cyclic(2, Exp::new(-1, 4)).unwrap());
    weil_relations(&FiniteQuadModule::cyclic(23, Exp::new(6, 23)).unwrap());
    weil_relations(&FiniteQuadModule::cyclic(46, Exp::new(1, 92)).unwrap());
    weil_relations(&FiniteQuadModule::cyclic(4, Exp::new(1, 8)).unwrap());
}

fn module_pairs() -> Vec<SublatticeData> {
    let m36 = FiniteQuadModule::cyclic(36, Exp::new(1, 72)).unwrap();
    let m50 = FiniteQuadModule::cyclic(50, Exp::new(1, 100)).unwrap();
    let m23 = FiniteQuadModule::cyclic(23, Exp::new(6, 23)).unwrap();
    vec![
        SublatticeData::from_isotropic(&m36, 12).unwrap(),
        SublatticeData::from_isotropic(&m50, 10).unwrap(),
        SublatticeData::identity(&m23),
    ]
}

fn rational() -> impl Strategy<Value = Rat> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn restriction_and_trace_are_adjoint(seed in proptest::collection::vec(rational(), 50 + 4)) {
        for data in module_pairs() {
            let nl = data.quotient.order() as usize;
            let nm = data.big.order() as usize;
            let f: Vec<Rat> = seed.iter().cycle().take(nl).cloned().collect();
            let g: Vec<Rat> = seed.iter().rev().cycle().take(nm).cloned().collect();
            prop_assert_eq!(pair(&f, &data.trace(&g)), pair(&data.restrict(&f), &g));
            let back = data.trace(&data.restrict(&f));
            let idx = Rat::from_integer((data.index() as i64).into());
            prop_assert_eq!(back, f.iter().map(|x| x * &idx).collect::<Vec<_>>());
        }
    }
}

#[test]
fn identity_inclusion_maps_are_identities() {
    let g = class_group(-23).unwrap();
    let v = theta_vector(&g, g.identity(), Exp::from_integer(2)).unwrap();
    let data = SublatticeData::identity(v.module());
    assert_eq!(v.res_map(&data).unwrap(), v);
    assert_eq!(v.tr_map(&data).unwrap(), v);
}

#[test]
fn vector_restriction_and_trace_on_series() {
    let data = &module_pairs()[0];
    let comps: Vec<FracSeries> = (0..4).map(|i| FracSeries::monomial(Rat::one(), Exp::new(i * i, 8))).collect();
    let f = VVSeries::new(data.quotient.clone(), comps).unwrap();
    let r = f.res_map(data).unwrap();
    assert_eq!(r.module().order(), 36);
    assert!(r.component(1).is_zero_to_trunc());
    let t = r.tr_map(data).unwrap();
    for (a, b) in t.components().iter().zip(f.components()) {
        assert_eq!(a, &b.scale(&Rat::from_integer(3.into())));
    }
    assert!(f.tr_map(data).is_err());
}
