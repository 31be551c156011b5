//! Cycle multiplicities, predicted valuations and the telescoping sum.

use std::collections::BTreeMap;

use localinv::{diff_set, nu_p, o_count};
use num_rational::Rational64;
use num_traits::Zero;
use quadfield::{ClassGroup, IdealClass};

use crate::CycleError;

/// How the class of `ρ` depends on `(𝔞, 𝔟)` at the prime `𝔓₀^{σ(𝔟)}`.
///
/// The two conventions differ by inversion, and `ρ(n, C) = ρ(n, C⁻¹)`
/// (complex conjugation), so every count agrees; both are exposed so
/// reports can state which one was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Labeling {
    /// `C = [𝔞]⁻²[𝔟]²`.
    Direct,
    /// `C = [𝔞]²[𝔟]⁻²`.
    Inverse,
}

impl Labeling {
    fn class(self, g: &ClassGroup, a: IdealClass, b: IdealClass) -> IdealClass {
        let ab = g.compose(g.pow(a, -2), g.pow(b, 2));
        match self {
            Labeling::Direct => ab,
            Labeling::Inverse => g.inverse(ab),
        }
    }

    /// `"direct"` or `"inverse"`.
    pub fn name(self) -> &'static str {
        match self {
            Labeling::Direct => "direct",
            Labeling::Inverse => "inverse",
        }
    }
}

/// The multiplicities of `Z(m)` (for the lattice of class `𝔞`) at the
/// primes `𝔓₀^{σ(𝔟)}`, `𝔟 ∈ Cl_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleMultiplicity {
    /// The index `m`.
    pub m: Rational64,
    /// The class `𝔞`.
    pub base_class: IdealClass,
    /// The supporting prime, if `|Diff(m)| = 1`.
    pub p: Option<u64>,
    /// Multiplicity at `𝔓₀^{σ(𝔟)}` for every class `𝔟`.
    pub per_sigma: BTreeMap<IdealClass, Rational64>,
    /// `o(m)`.
    pub o: u32,
    /// `ν_p(m)` (zero when unsupported).
    pub nu: Rational64,
}

impl CycleMultiplicity {
    /// `Σ_𝔟` of the multiplicities.
    pub fn total(&self) -> Rational64 {
        self.per_sigma.values().sum()
    }
}

/// `m·|D|` as a positive integer.
fn scaled_index(g: &ClassGroup, m: Rational64) -> Result<u64, CycleError> {
    let n = m * Rational64::from_integer(g.discriminant().abs() as i64);
    if !n.is_integer() || *n.numer() <= 0 {
        return Err(CycleError::BadIndex(m));
    }
    Ok(*n.numer() as u64)
}

/// The common factors `(p, o(m), ν_p(m), m|D|/p)`, or `None` if
/// `|Diff(m)| ≠ 1`.  When `p ∤ m|D|` (a ramified `p` with `ν_p(m) = 0`)
/// the last entry is `0`.
fn support(g: &ClassGroup, m: Rational64) -> Result<Option<(u64, u32, Rational64, u64)>, CycleError> {
    let n = scaled_index(g, m)?;
    let d = g.discriminant();
    let diff = diff_set(m, d)?;
    if diff.primes.len() != 1 {
        return Ok(None);
    }
    let p = diff.primes[0];
    let o = o_count(m, d)?;
    if n % p != 0 {
        // only a ramified p with ord_p(m|D|) = 0, where ν_p = 0
        return Ok(Some((p, o, Rational64::zero(), 0)));
    }
    let nu = nu_p(m, p, d)?;
    Ok(Some((p, o, nu, n / p)))
}

/// `2^{o−1}·ν·ρ(n, C)`, zero without counting when `ν = 0`.
fn closed_form(g: &ClassGroup, o: u32, nu: Rational64, n: u64, c: IdealClass) -> Rational64 {
    if nu.is_zero() {
        return Rational64::zero();
    }
    two_pow(o) * nu * Rational64::from_integer(g.count_ideals_in_class(n, c) as i64)
}

fn two_pow(o: u32) -> Rational64 {
    if o == 0 {
        Rational64::new(1, 2)
    } else {
        Rational64::from_integer(1 << (o - 1))
    }
}

fn require_prime(g: &ClassGroup) -> Result<(), CycleError> {
    if g.discriminant().is_prime_discriminant() {
        Ok(())
    } else {
        Err(CycleError::CompositeD(g.discriminant().value()))
    }
}

/// All multiplicities of `Z(m)` for the class `𝔞`.
pub fn cycle_multiplicities(g: &ClassGroup, m: Rational64, a: IdealClass, labeling: Labeling) -> Result<CycleMultiplicity, CycleError> {
    require_prime(g)?;
    let s = support(g, m)?;
    let per_sigma = g
        .classes()
        .map(|b| {
            let v = match s {
                Some((_, o, nu, n)) => closed_form(g, o, nu, n, labeling.class(g, a, b)),
                None => Rational64::zero(),
            };
            (b, v)
        })
        .collect();
    Ok(CycleMultiplicity {
        m,
        base_class: a,
        p: s.map(|x| x.0),
        per_sigma,
        o: s.map_or(0, |x| x.1),
        nu: s.map_or(Rational64::zero(), |x| x.2),
    })
}

/// The multiplicity `2^{o(m)−1}·ν_p(m)·ρ(m|D|/p, C)` of `Z(m)` (class
/// `𝔞`) at `𝔓₀^{σ(𝔟)}`; zero unless `|Diff(m)| = 1`.
pub fn cycle_multiplicity(g: &ClassGroup, m: Rational64, a: IdealClass, b: IdealClass, labeling: Labeling) -> Result<Rational64, CycleError> {
    Ok(cycle_multiplicities(g, m, a, labeling)?.per_sigma[&b])
}

/// The multiplicity for an arbitrary odd fundamental discriminant, with the
/// class translation `𝔠₀` supplied by the caller:
/// `2^{o(m)−1}·ν_p(m)·ρ(m|D|/p, [𝔞]⁻²[𝔟]²·𝔠₀)`.
pub fn cycle_multiplicity_translated(
    g: &ClassGroup,
    m: Rational64,
    a: IdealClass,
    b: IdealClass,
    c0: IdealClass,
) -> Result<Rational64, CycleError> {
    Ok(match support(g, m)? {
        Some((_, o, nu, n)) => closed_form(g, o, nu, n, g.compose(Labeling::Direct.class(g, a, b), c0)),
        None => Rational64::zero(),
    })
}

/// The `r`-free predicted valuation `2^{o(m)}·ν_p(m)·ρ(m|D|/p, [𝔞]²[𝔟]⁻²)`.
pub fn predicted_valuation(g: &ClassGroup, m: Rational64, a: IdealClass, b: IdealClass) -> Result<Rational64, CycleError> {
    require_prime(g)?;
    match support(g, m)? {
        Some((_, o, nu, n)) => Ok(closed_form(g, o, nu, n, Labeling::Inverse.class(g, a, b)) * 2),
        None => Err(CycleError::NoSupport { m, size: diff_set(m, g.discriminant())?.primes.len() }),
    }
}

/// Checks `Σ_{j ≥ 1} ρ(n/p^j, C) = ν_p(n/|D|)·ρ(n/p, C)` exactly, where
/// `Diff(n/|D|) = {p}` and `p | n`.  Returns `Ok(None)` when the
/// precondition fails.
pub fn telescoping_check(g: &ClassGroup, n: u64, c: IdealClass) -> Result<Option<bool>, CycleError> {
    let m = Rational64::new(n as i64, g.discriminant().abs() as i64);
    let Some((p, _, nu, _)) = support(g, m)? else {
        return Ok(None);
    };
    if n % p != 0 {
        return Ok(None);
    }
    let mut lhs = 0u64;
    let mut q = n;
    while q % p == 0 {
        q /= p;
        lhs += g.count_ideals_in_class(q, c);
    }
    let rhs = nu * Rational64::from_integer(g.count_ideals_in_class(n / p, c) as i64);
    Ok(Some(Rational64::from_integer(lhs as i64) == rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use quadfield::class_group;

    #[test]
    fn powers_of_two() {
        assert_eq!(two_pow(0), Rational64::new(1, 2));
        assert_eq!(two_pow(1), Rational64::one());
        assert_eq!(two_pow(3), Rational64::from_integer(4));
    }

    #[test]
    fn scaled_index_rejects_non_lattice_m() {
        let g = class_group(-23).unwrap();
        assert_eq!(scaled_index(&g, Rational64::new(1, 2)), Err(CycleError::BadIndex(Rational64::new(1, 2))));
        assert_eq!(scaled_index(&g, Rational64::new(5, 23)), Ok(5));
    }
}
