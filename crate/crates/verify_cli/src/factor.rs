//! Integer factorization: trial division, then a general factorizer for
//! the cofactor.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Trial division runs up to this bound before the cofactor is handed to
/// the general factorizer.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// A factorization `n = ∏ pᵉ · ∏ unfactored`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factorization {
    /// Prime factors with exponents.
    pub primes: BTreeMap<BigUint, u32>,
    /// Cofactors the general factorizer could not split (empty on
    /// success).
    pub unfactored: Vec<BigUint>,
}

impl Factorization {
    /// True if every factor is prime.
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }
}

/// Factors `n ≥ 1`.
pub fn factor(n: &BigUint) -> Factorization {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut out = Factorization::default();
    let mut rest = n.clone();
    let add = |p: BigUint, e: u32, out: &mut Factorization| *out.primes.entry(p).or_insert(0) += e;
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_BOUND && !rest.is_one() {
        if rest.to_u128().is_some_and(|r| (p as u128) * (p as u128) > r) {
            break;
        }
        let bp = BigUint::from(p);
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            add(bp, e, &mut out);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let (found, remaining) = num_prime::nt_funcs::factors(rest, None);
        for (q, e) in found {
            add(q, e as u32, &mut out);
        }
        out.unfactored = remaining.unwrap_or_default();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u128) -> Vec<(u128, u32)> {
        factor(&BigUint::from(n)).primes.into_iter().map(|(p, e)| (p.to_u128().unwrap(), e)).collect()
    }

    #[test]
    fn small_and_large_factors() {
        assert_eq!(f(1), vec![]);
        assert_eq!(f(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(f(23u128.pow(24)), vec![(23, 24)]);
        assert_eq!(f(1_000_000_007 * 1_000_000_009 * 4), vec![(2, 2), (1_000_000_007, 1), (1_000_000_009, 1)]);
        assert_eq!(f(999_983 * 999_983), vec![(999_983, 2)]);
    }
}
