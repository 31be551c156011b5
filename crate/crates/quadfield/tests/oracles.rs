//! Class groups and ideal counts against independent closed forms and
//! brute-force lattice counts.

use proptest::prelude::*;
use quadfield::{class_group, is_fundamental, kronecker_chi, IdealClass};

/// Dirichlet's class number formula `h = −(1/|D|)·Σ_{a<|D|} a·χ(a)` for
/// fundamental `D < −4`.
fn dirichlet_class_number(d: i64) -> i64 {
    let n = d.abs();
    let s: i64 = (1..n).map(|a| a * kronecker_chi(d, a) as i64).sum();
    assert_eq!(s % n, 0);
    -s / n
}

#[test]
fn class_numbers_match_the_analytic_formula() {
    let mut checked = 0;
    for d in (-600..-4).filter(|&d| is_fundamental(d)) {
        assert_eq!(class_group(d).unwrap().order() as i64, dirichlet_class_number(d), "D = {d}");
        checked += 1;
    }
    assert!(checked > 150);
}

#[test]
fn representation_numbers_match_ideal_counts() {
    // r_Q(n) = #{(x, y) : Q(x, y) = n} = w·ρ(n, [Q]) for a primitive form Q.
    for d in [-23i64, -47, -71, -84] {
        let g = class_group(d).unwrap();
        let w = g.units() as u64;
        for c in g.classes() {
            let f = g.form(c);
            for n in 1..=150u64 {
                let bound = (4 * f.a * n as i64 / d.abs()).isqrt() as i64 + 2 + n as i64;
                let mut reps = 0u64;
                for y in -bound..=bound {
                    for x in -bound..=bound {
                        if f.eval(x, y) == n as i64 {
                            reps += 1;
                        }
                    }
                }
                assert_eq!(reps, w * g.count_ideals_in_class(n, c), "D = {d}, class {c:?}, n = {n}");
            }
        }
    }
}

#[test]
fn class_counts_sum_to_divisor_sums() {
    // Σ_C ρ(n, C) = Σ_{k | n} χ_D(k).
    for d in [-23i64, -31, -47, -56] {
        let g = class_group(d).unwrap();
        for n in 1..=400u64 {
            let total: u64 = g.classes().map(|c| g.count_ideals_in_class(n, c)).sum();
            let divisor_sum: i64 = (1..=n).filter(|k| n % k == 0).map(|k| kronecker_chi(d, k as i64) as i64).sum();
            assert_eq!(total as i64, divisor_sum, "D = {d}, n = {n}");
        }
    }
}

proptest! {
    #[test]
    fn composition_is_an_abelian_group_law(idx in 0usize..200, x in 0usize..64, y in 0usize..64, z in 0usize..64) {
        let ds: Vec<i64> = (-400..-4).filter(|&d| is_fundamental(d)).collect();
        let g = class_group(ds[idx % ds.len()]).unwrap();
        let h = g.order();
        let (x, y, z) = (IdealClass(x % h), IdealClass(y % h), IdealClass(z % h));
        prop_assert_eq!(g.compose(g.compose(x, y), z), g.compose(x, g.compose(y, z)));
        prop_assert_eq!(g.compose(x, y), g.compose(y, x));
        prop_assert_eq!(g.compose(x, g.inverse(x)), g.identity());
        prop_assert_eq!(g.pow(x, h as i64), g.identity());
    }
}
