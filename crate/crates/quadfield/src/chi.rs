//! Kronecker symbols and fundamental discriminants.

/// Jacobi symbol `(a/n)` for odd `n > 0`.
pub fn jacobi_symbol(a: i64, n: i64) -> i32 {
    assert!(n > 0 && n % 2 == 1, "Jacobi symbol needs an odd positive modulus");
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol `(D/n)` for any integer `n`.
///
/// Completely multiplicative in `n` for a discriminant `D`; zero exactly
/// when `gcd(n, D) > 1`.
pub fn kronecker_chi(d: i64, n: i64) -> i32 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut result = 1;
    let mut m = n;
    if m < 0 {
        m = -m;
        if d < 0 {
            result = -result;
        }
    }
    let mut v = 0;
    while m % 2 == 0 {
        m /= 2;
        v += 1;
    }
    if v > 0 {
        let k2 = if d % 2 == 0 {
            0
        } else if matches!(d.rem_euclid(8), 1 | 7) {
            1
        } else {
            -1
        };
        if k2 == 0 {
            return 0;
        }
        if v % 2 == 1 {
            result *= k2;
        }
    }
    if m == 1 {
        return result;
    }
    result * jacobi_symbol(d, m)
}

fn is_squarefree(n: u64) -> bool {
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// True iff `D` is a fundamental discriminant.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Total number of integral ideals of norm `n`, `r(n) = Σ_{d | n} χ_D(d)`
/// (valid for fundamental `D`).
pub fn total_ideal_count(d: i64, n: u64) -> i64 {
    (1..=n).filter(|k| n % k == 0).map(|k| kronecker_chi(d, k as i64) as i64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn legendre_euler(a: i64, p: i64) -> i32 {
        let mut r = 1i64;
        let mut b = a.rem_euclid(p);
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        match r {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    #[test]
    fn values_for_minus_23() {
        assert_eq!(kronecker_chi(-23, 23), 0);
        assert_eq!(kronecker_chi(-23, 2), 1);
        assert_eq!(kronecker_chi(-23, 5), -1);
        assert_eq!(kronecker_chi(-23, -1), -1);
    }

    #[test]
    fn agrees_with_euler_criterion_at_odd_primes() {
        for d in [-23i64, -31, -47, -7, -163, -4, -8, -20] {
            for p in [3i64, 5, 7, 11, 13, 17, 19, 29, 31, 37, 41, 43, 47] {
                assert_eq!(kronecker_chi(d, p), legendre_euler(d, p), "D={d} p={p}");
            }
        }
    }

    #[test]
    fn fundamental_discriminants() {
        assert!(is_fundamental(-23));
        assert!(is_fundamental(-4));
        assert!(is_fundamental(-8));
        assert!(!is_fundamental(-12));
        assert!(!is_fundamental(-92));
        assert!(!is_fundamental(-27));
    }

    #[test]
    fn complete_multiplicativity() {
        for d in [-23i64, -31, -4, -15] {
            for m in 1..=200i64 {
                for n in 1..=200i64 {
                    assert_eq!(kronecker_chi(d, m * n), kronecker_chi(d, m) * kronecker_chi(d, n));
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn zero_iff_common_factor(n in 1i64..5000) {
            let d = -23i64 * 31;
            let g = num_integer::Integer::gcd(&n, &d);
            proptest::prop_assert_eq!(kronecker_chi(d, n) == 0, g != 1);
        }
    }
}
