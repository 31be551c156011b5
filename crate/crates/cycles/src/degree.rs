//! Arithmetic degrees `\widehat{deg} Z(m) = Σ_𝔓 Z(m)_𝔓 · log N(𝔓)` and
//! their generating series.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::Zero;
use quadfield::{ClassGroup, IdealClass};
use serde_json::json;

use crate::multiplicity::{cycle_multiplicities, Labeling};
use crate::CycleError;

/// Residue-degree factors `f_p` (so `log N(𝔓) = f_p·log p`) for ramified
/// and inert primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueDegrees {
    /// `f_p` for `p | D`.
    pub ramified: u32,
    /// `f_p` for `χ_D(p) = −1`.
    pub inert: u32,
}

impl Default for ResidueDegrees {
    fn default() -> Self {
        ResidueDegrees { ramified: 1, inert: 2 }
    }
}

impl ResidueDegrees {
    /// `f_p` for the prime `p` of discriminant `d`.
    pub fn for_prime(&self, p: u64, d: i64) -> u32 {
        if d.unsigned_abs() % p == 0 {
            self.ramified
        } else {
            self.inert
        }
    }
}

/// `\widehat{deg} Z(m) = coeff·log p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degree {
    /// The rational multiple of `log p`.
    pub coeff: Rational64,
    /// The supporting prime (`None` when `|Diff(m)| ≠ 1`, and then
    /// `coeff = 0`).
    pub prime: Option<u64>,
}

/// True if `m = n/|D|` with `n` a positive integer and `χ_D(n) ≠ 1`, i.e.
/// `−m ≡ Q(μ) mod ℤ` for some `μ` in the discriminant group.
pub fn is_represented(g: &ClassGroup, m: Rational64) -> bool {
    let n = m * Rational64::from_integer(g.discriminant().abs() as i64);
    n.is_integer() && *n.numer() > 0 && g.discriminant().chi(*n.numer()) != 1
}

/// `\widehat{deg} Z(m, 𝔞) = f_p · Σ_𝔟 Z(m)_{𝔓₀^{σ(𝔟)}} · log p`.
pub fn degree(g: &ClassGroup, m: Rational64, a: IdealClass, f: ResidueDegrees) -> Result<Degree, CycleError> {
    let z = cycle_multiplicities(g, m, a, Labeling::Direct)?;
    Ok(match z.p {
        Some(p) => Degree { coeff: Rational64::from_integer(f.for_prime(p, g.discriminant().value()) as i64) * z.total(), prime: Some(p) },
        None => Degree { coeff: Rational64::zero(), prime: None },
    })
}

/// The coefficients `\widehat{deg} Z(m)` of the degree generating series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSeries {
    /// The discriminant.
    pub d: i64,
    /// The class `𝔞`.
    pub class: IdealClass,
    /// One entry per represented `m ∈ (1/|D|)ℤ`, `0 < m ≤ m_max`.
    pub entries: BTreeMap<Rational64, Degree>,
}

impl DegreeSeries {
    /// JSON `{D, class, entries: [{m: [num, den], coeff: [num, den], p}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|(m, e)| json!({"m": [m.numer(), m.denom()], "coeff": [e.coeff.numer(), e.coeff.denom()], "p": e.prime}))
            .collect();
        json!({"D": self.d, "class": self.class.0, "entries": entries})
    }

    /// CSV text with header `m,coeff,p` (`p` empty when unsupported).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,coeff,p\n");
        for (m, e) in &self.entries {
            let p = e.prime.map(|p| p.to_string()).unwrap_or_default();
            out.push_str(&format!("{m},{},{p}\n", e.coeff));
        }
        out
    }
}

/// All degrees for represented `m ≤ m_max`.
pub fn degree_series(g: &ClassGroup, a: IdealClass, m_max: Rational64, f: ResidueDegrees) -> Result<DegreeSeries, CycleError> {
    let dd = g.discriminant().abs() as i64;
    let n_max = (m_max * Rational64::from_integer(dd)).floor().to_integer();
    let mut entries = BTreeMap::new();
    for n in 1..=n_max {
        let m = Rational64::new(n, dd);
        if is_represented(g, m) {
            entries.insert(m, degree(g, m, a, f)?);
        }
    }
    Ok(DegreeSeries { d: g.discriminant().value(), class: a, entries })
}
