//! Local invariants over `ℚ` attached to an imaginary quadratic field.
//!
//! * [`hilbert_symbol`] — `(a, b)_v` at a finite prime or at `∞`;
//! * [`diff_set`] — the finite primes where `(−m, D)_p = −1`;
//! * [`nu_p`] — the multiplicity `½(ord_p(m) + 1)` (inert) or
//!   `ord_p(m|D|)` (ramified);
//! * [`o_count`] — the number of primes `q | D` with `ord_q(m|D|) > 0`.
//!
//! Rational arguments are reduced to square classes: `n/d` and `n·d`
//! have the same Hilbert symbols.

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use quadfield::Discriminant;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A place of `ℚ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Place {
    /// A finite prime `p`.
    Prime(u64),
    /// The real place.
    Infinity,
}

/// Errors from the local invariant functions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    /// `ν_p` is only defined at non-split primes.
    #[error("prime {0} splits in the field")]
    SplitPrime(u64),
    /// A zero argument where a nonzero rational is required.
    #[error("argument must be nonzero")]
    ZeroArgument,
    /// A non-positive `m`.
    #[error("m must be positive")]
    NonPositive,
}

/// The set `Diff(m)` with the inputs that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffResult {
    /// Sorted primes `p` with `(−m, D)_p = −1`.
    pub primes: Vec<u64>,
    /// The positive rational `m`, as `(numerator, denominator)`.
    pub m: (i64, i64),
    /// The discriminant.
    pub d: i64,
}

/// Distinct prime factors of `n > 0`, increasing (trial division).
pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// True if `n` is prime (trial division).
pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// `ord_p(n)` for nonzero integer `n`.
pub fn valuation(n: i128, p: u64) -> u32 {
    assert!(n != 0, "valuation of zero");
    let p = p as i128;
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// `ord_p` of a nonzero rational.
pub fn valuation_rat(x: Rational64, p: u64) -> i32 {
    valuation(*x.numer() as i128, p) as i32 - valuation(*x.denom() as i128, p) as i32
}

fn legendre(a: i128, p: u64) -> i32 {
    quadfield::jacobi_symbol((a.rem_euclid(p as i128)) as i64, p as i64)
}

/// Square-class representative `n·d` of `n/d`.
fn square_class(x: Rational64) -> i128 {
    *x.numer() as i128 * *x.denom() as i128
}

fn hilbert_int(a: i128, b: i128, place: Place) -> i32 {
    match place {
        Place::Infinity => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => {
            let (alpha, beta) = (valuation(a, p), valuation(b, p));
            let pp = p as i128;
            let u = a / pp.pow(alpha);
            let v = b / pp.pow(beta);
            if p == 2 {
                let eps = |x: i128| (x.rem_euclid(4) == 3) as u32;
                let omega = |x: i128| matches!(x.rem_euclid(8), 3 | 5) as u32;
                let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let sign = if (alpha * beta) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
                let lu = if beta % 2 == 1 { legendre(u, p) } else { 1 };
                let lv = if alpha % 2 == 1 { legendre(v, p) } else { 1 };
                sign * lu * lv
            }
        }
    }
}

/// The Hilbert symbol `(a, b)_v` for nonzero rationals `a`, `b`.
///
/// Odd `p` uses `(−1)^{αβε(p)} (u/p)^β (v/p)^α`; `p = 2` uses
/// `(−1)^{ε(u)ε(v) + αω(v) + βω(u)}`; at `∞` the symbol is `−1` exactly
/// when both arguments are negative.
pub fn hilbert_symbol(a: Rational64, b: Rational64, place: Place) -> Result<i32, LocalError> {
    if a.is_zero() || b.is_zero() {
        return Err(LocalError::ZeroArgument);
    }
    Ok(hilbert_int(square_class(a), square_class(b), place))
}

/// Primes at which `(a, b)_p` can differ from `1`: those dividing
/// `2·num·den` of either argument.
pub fn support_primes(a: Rational64, b: Rational64) -> Vec<u64> {
    let mut ps: Vec<u64> = vec![2];
    for x in [*a.numer(), *a.denom(), *b.numer(), *b.denom()] {
        ps.extend(prime_factors(x.unsigned_abs()));
    }
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// `Diff(m) = {p < ∞ : (−m, D)_p = −1}` for positive rational `m`.
pub fn diff_set(m: Rational64, d: Discriminant) -> Result<DiffResult, LocalError> {
    if !m.is_positive() {
        return Err(LocalError::NonPositive);
    }
    let dd = Rational64::from_integer(d.value());
    let primes = support_primes(-m, dd)
        .into_iter()
        .filter(|p| hilbert_int(square_class(-m), d.value() as i128, Place::Prime(*p)) == -1)
        .collect();
    Ok(DiffResult { primes, m: (*m.numer(), *m.denom()), d: d.value() })
}

/// The multiplicity `ν_p(m)`: `½(ord_p(m) + 1)` for inert `p`,
/// `ord_p(m|D|)` for ramified `p`.
pub fn nu_p(m: Rational64, p: u64, d: Discriminant) -> Result<Rational64, LocalError> {
    if !m.is_positive() {
        return Err(LocalError::NonPositive);
    }
    match d.chi(p as i64) {
        1 => Err(LocalError::SplitPrime(p)),
        -1 => Ok(Rational64::new(valuation_rat(m, p) as i64 + 1, 2)),
        _ => Ok(Rational64::from_integer(valuation_rat(m * d.abs() as i64, p) as i64)),
    }
}

/// `o(m)`: the number of primes `q | D` with `ord_q(m|D|) > 0`.
pub fn o_count(m: Rational64, d: Discriminant) -> Result<u32, LocalError> {
    if !m.is_positive() {
        return Err(LocalError::NonPositive);
    }
    let md = m * d.abs() as i64;
    Ok(prime_factors(d.abs()).into_iter().filter(|q| valuation_rat(md, *q) > 0).count() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn d23() -> Discriminant {
        Discriminant::fundamental(-23).unwrap()
    }

    #[test]
    fn trivial_symbols() {
        for p in [Place::Prime(2), Place::Prime(3), Place::Prime(23), Place::Infinity] {
            for b in [-7i64, -1, 2, 5, 46] {
                assert_eq!(hilbert_symbol(r(1, 1), r(b, 1), p).unwrap(), 1);
            }
        }
        assert_eq!(hilbert_symbol(r(-1, 1), r(-1, 1), Place::Infinity).unwrap(), -1);
        assert_eq!(hilbert_symbol(r(-1, 1), r(-1, 1), Place::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(r(-5 * 23, 1), r(-23, 1), Place::Prime(5)).unwrap(), -1);
        assert!(hilbert_symbol(r(0, 1), r(1, 1), Place::Infinity).is_err());
    }

    #[test]
    fn diff_examples() {
        assert_eq!(diff_set(r(1, 1), d23()).unwrap().primes, vec![23]);
        assert_eq!(diff_set(r(5, 23), d23()).unwrap().primes, vec![5]);
        assert_eq!(diff_set(r(385, 23), d23()).unwrap().primes, vec![5, 7, 11]);
    }

    #[test]
    fn nu_and_o_examples() {
        assert_eq!(nu_p(r(5, 23), 5, d23()).unwrap(), r(1, 1));
        assert_eq!(nu_p(r(1, 1), 23, d23()).unwrap(), r(1, 1));
        assert_eq!(nu_p(r(125, 23), 5, d23()).unwrap(), r(2, 1));
        assert_eq!(nu_p(r(1, 1), 2, d23()), Err(LocalError::SplitPrime(2)));
        assert_eq!(o_count(r(5, 23), d23()).unwrap(), 0);
        assert_eq!(o_count(r(1, 1), d23()).unwrap(), 1);
    }

    #[test]
    fn factor_helpers() {
        assert_eq!(prime_factors(2 * 2 * 3 * 23 * 23 * 97), vec![2, 3, 23, 97]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert!(is_prime(23) && !is_prime(1) && !is_prime(91));
        assert_eq!(valuation_rat(r(50, 27), 3), -3);
    }
}
