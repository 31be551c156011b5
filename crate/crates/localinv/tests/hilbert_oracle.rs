//! Hilbert symbols against brute-force solvability of `z² = ax² + by²`
//! modulo prime powers, plus the global invariants.

use localinv::{diff_set, hilbert_symbol, prime_factors, support_primes, Place};
use num_rational::Rational64;
use proptest::prelude::*;
use quadfield::{kronecker_chi, Discriminant};

/// Removes square factors from a nonzero integer.
fn squarefree_part(n: i64) -> i64 {
    let mut out = n.signum();
    let mut m = n.unsigned_abs();
    for p in prime_factors(m) {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p as i64;
        }
    }
    out
}

/// `(a, b)_p` by searching for a primitive solution of `z² ≡ ax² + by²`
/// modulo `p^k`.  With squarefree `a`, `b`, a primitive solution modulo
/// `p²` (odd `p`) or `2⁶` lifts to `ℚ_p`.
fn brute_force_symbol(a: i64, b: i64, p: u64) -> i32 {
    let (a, b) = (squarefree_part(a), squarefree_part(b));
    let k = if p == 2 { 6 } else { 2 };
    let modulus = (p as i64).pow(k);
    let mut square = vec![false; modulus as usize];
    let mut unit_square = vec![false; modulus as usize];
    for z in 0..modulus {
        let s = (z * z).rem_euclid(modulus) as usize;
        square[s] = true;
        if z % p as i64 != 0 {
            unit_square[s] = true;
        }
    }
    for x in 0..modulus {
        for y in 0..modulus {
            let v = (a * x % modulus * x + b * y % modulus * y).rem_euclid(modulus) as usize;
            let primitive_xy = x % p as i64 != 0 || y % p as i64 != 0;
            if (primitive_xy && square[v]) || unit_square[v] {
                return 1;
            }
        }
    }
    -1
}

#[test]
fn closed_form_matches_brute_force_on_a_grid() {
    let values = [-46i64, -23, -15, -10, -7, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 11, 14, 23, 69];
    for p in [2u64, 3, 5, 7, 11, 23] {
        for &a in &values {
            for &b in &values {
                let closed = hilbert_symbol(Rational64::from_integer(a), Rational64::from_integer(b), Place::Prime(p)).unwrap();
                assert_eq!(closed, brute_force_symbol(a, b, p), "({a}, {b})_{p}");
            }
        }
    }
}

#[test]
fn rationals_use_their_square_class() {
    let a = Rational64::new(-5, 23);
    let b = Rational64::from_integer(-23);
    for p in [2u64, 5, 23] {
        let closed = hilbert_symbol(a, b, Place::Prime(p)).unwrap();
        assert_eq!(closed, brute_force_symbol(-5 * 23, -23, p));
    }
}

fn nonzero_rational() -> impl Strategy<Value = Rational64> {
    (prop_oneof![-300i64..-1, 1i64..300], 1i64..60).prop_map(|(n, d)| Rational64::new(n, d))
}

proptest! {
    #[test]
    fn product_formula(a in nonzero_rational(), b in nonzero_rational()) {
        let mut prod = hilbert_symbol(a, b, Place::Infinity).unwrap();
        for p in support_primes(a, b) {
            prod *= hilbert_symbol(a, b, Place::Prime(p)).unwrap();
        }
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn symmetric_and_bimultiplicative(a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational()) {
        for p in support_primes(a, b * c).into_iter().map(Place::Prime).chain([Place::Infinity]) {
            prop_assert_eq!(hilbert_symbol(a, b, p).unwrap(), hilbert_symbol(b, a, p).unwrap());
            prop_assert_eq!(
                hilbert_symbol(a, b * c, p).unwrap(),
                hilbert_symbol(a, b, p).unwrap() * hilbert_symbol(a, c, p).unwrap()
            );
        }
    }

    #[test]
    fn diff_sets_are_odd_and_nonsplit(n in 1i64..3000, den in prop_oneof![Just(1i64), Just(23)], which in 0usize..4) {
        let d = [-23i64, -31, -47, -7][which];
        let disc = Discriminant::fundamental(d).unwrap();
        let m = Rational64::new(n, den);
        let diff = diff_set(m, disc).unwrap();
        prop_assert_eq!(diff.primes.len() % 2, 1);
        for p in diff.primes {
            prop_assert!(kronecker_chi(d, p as i64) != 1);
        }
    }
}
