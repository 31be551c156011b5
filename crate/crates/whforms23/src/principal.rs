//! The principal part of the vector-valued lift `F_m = f_m ⊗ φ` for an
//! index-1 Jacobi form `φ`.
//!
//! `f_m` lifts to the module `ℤ/23` with `Q(μ) = 6μ²/23` by
//! `f_μ = Σ_{n ≡ 6μ² (23)} w_n·c(n) q^{n/23}`, `w_n = 2` when `23 | n` and 1
//! otherwise; `φ` contributes its theta decomposition over `ℤ/2`.  The
//! product lives on `ℤ/46 ≅ ℤ/23 ⊕ ℤ/2` with `Q(x) = x²/92`, and its
//! coefficient at `q^{−d/92}` in the component `x` with `x² ≡ −d (92)` is
//!
//! `C(d) = Σ_k w_n·c(n)·c_φ(k, ε)`, `n = (−d + 23ε − 92k)/4`,
//!
//! with `ε = 0` for `d ≡ 0 (4)` and `ε = 1` for `d ≡ 3 (4)`.

use std::collections::BTreeMap;

use jacobiforms::{phi_0_1, phi_m2_1, JacobiForm};
use num_traits::{One, Zero};
use qseries::{delta_j_expansions, Rat};

use crate::level::LEVEL;
use crate::{WHForm, WhError};

/// `4·|D|`: the denominator of the exponents `−d/92`.
const N: i64 = 4 * LEVEL;

/// One row of a principal part: `C(d)` in the component `±r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalEntry {
    /// The residue `r ∈ [0, 23]` with `r² ≡ −d (92)` (its negative is the
    /// other component).
    pub residue: i64,
    /// `C(d)`.
    pub coeff: Rat,
}

/// The principal part `{d ↦ C(d)}` of `F_m` (with `d > 0`) together with
/// its constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalPartTable {
    m: i64,
    entries: BTreeMap<i64, PrincipalEntry>,
    constant: Rat,
    correction: Option<Rat>,
}

/// The residue `r ∈ [0, 23]` with `r² ≡ −d mod 92`, if any.
pub fn residue_for(d: i64) -> Option<i64> {
    (0..=LEVEL).find(|r| (r * r + d).rem_euclid(N) == 0)
}

impl PrincipalPartTable {
    /// The pole order of the underlying `f_m`.
    pub fn m(&self) -> i64 {
        self.m
    }

    /// Rows with nonzero `C(d)`, keyed by `d`.
    pub fn entries(&self) -> &BTreeMap<i64, PrincipalEntry> {
        &self.entries
    }

    /// `C(d)` (zero if absent).
    pub fn get(&self, d: i64) -> Rat {
        self.entries.get(&d).map_or_else(Rat::zero, |e| e.coeff.clone())
    }

    /// The constant term `C(0)`.
    pub fn constant(&self) -> &Rat {
        &self.constant
    }

    /// The multiple `t` of `f ⊗ D(j)·φ₋₂,₁` added to clear the constant
    /// term, if one was needed.
    pub fn correction(&self) -> Option<&Rat> {
        self.correction.as_ref()
    }

    /// True if every `C(d)` is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|e| e.coeff.is_integer())
    }

    /// `d` is self-paired when its residue satisfies `r ≡ −r (46)`.
    pub fn is_self_paired(d: i64) -> bool {
        matches!(residue_for(d), Some(0) | Some(LEVEL))
    }

    /// Rows as a plain map `d ↦ C(d)`.
    pub fn as_map(&self) -> BTreeMap<i64, Rat> {
        self.entries.iter().map(|(d, e)| (*d, e.coeff.clone())).collect()
    }

    /// JSON view `{m, constant, correction, rows: [[d, r, num, den], …]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(d, e)| serde_json::json!([d, e.residue, e.coeff.numer().to_string(), e.coeff.denom().to_string()]))
            .collect();
        serde_json::json!({
            "m": self.m,
            "constant": self.constant.to_string(),
            "correction": self.correction.as_ref().map(|t| t.to_string()),
            "rows": rows,
        })
    }

    fn combine(&self, other: &PrincipalPartTable, t: &Rat) -> PrincipalPartTable {
        let mut entries = self.entries.clone();
        for (d, e) in &other.entries {
            let slot = entries.entry(*d).or_insert_with(|| PrincipalEntry { residue: e.residue, coeff: Rat::zero() });
            slot.coeff += &e.coeff * t;
        }
        entries.retain(|_, e| !e.coeff.is_zero());
        PrincipalPartTable { m: self.m, entries, constant: &self.constant + &other.constant * t, correction: Some(t.clone()) }
    }
}

/// The principal part of `f ⊗ φ` for a plus form `f` and an index-1 Jacobi
/// form `φ`, without any correction.
pub fn tensor_principal_part_with(f: &WHForm, phi: &JacobiForm) -> Result<PrincipalPartTable, WhError> {
    if phi.index() != 1 {
        return Err(WhError::Unsupported(format!("index-1 Jacobi form expected, got index {}", phi.index())));
    }
    let m = f.pole_order();
    let kmin = phi.min_n().unwrap_or(0);
    let dmax = 4 * m + LEVEL - N * kmin;
    let mut entries = BTreeMap::new();
    let mut constant = Rat::zero();
    for d in 0..=dmax {
        let eps = match d % 4 {
            0 => 0,
            3 => 1,
            _ => continue,
        };
        let mut total = Rat::zero();
        let mut k = kmin;
        loop {
            let num = -d + LEVEL * eps - N * k;
            let n = num / 4;
            if n < -m {
                break;
            }
            let cf = f.coeff(n).ok_or_else(|| WhError::Unsupported(format!("f_{m} is not known at q^{n}")))?;
            if !cf.is_zero() {
                let cphi = phi.coeff(k, eps).ok_or_else(|| WhError::Unsupported(format!("φ is not known at q^{k}")))?;
                let w = if n % LEVEL == 0 { 2 } else { 1 };
                total += cf * cphi * Rat::from_integer(w.into());
            }
            k += 1;
        }
        if d == 0 {
            constant = total;
        } else if !total.is_zero() {
            let residue = residue_for(d).expect("d ≡ 0, 3 mod 4 with a nonzero coefficient has a residue");
            entries.insert(d, PrincipalEntry { residue, coeff: total });
        }
    }
    Ok(PrincipalPartTable { m, entries, constant, correction: None })
}

/// The principal part of `F_m = f_m ⊗ φ₀,₁` (the `A = 1` case).
///
/// When the constant term of `f_m ⊗ φ₀,₁` is nonzero (this happens exactly
/// when `f_m` has a pole at `q^{−23k}` meeting the `q^{k}` terms of
/// `φ₀,₁`, e.g. `m = 23`), the lift is replaced by
/// `f_m ⊗ (φ₀,₁ + t·D(j)·φ₋₂,₁)` with `t` chosen to clear the constant
/// term.  `D(j)·φ₋₂,₁` vanishes at `z = 0`, so the pairing with the
/// negative-definite theta series is unchanged; the corrected table then
/// has rational entries.
pub fn tensor_principal_part(f: &WHForm) -> Result<PrincipalPartTable, WhError> {
    let jac_order = f.pole_order() / LEVEL + 3;
    let base = tensor_principal_part_with(f, &phi_0_1(jac_order))?;
    if base.constant.is_zero() {
        return Ok(base);
    }
    let (_, j) = delta_j_expansions(jac_order + 2);
    let dj_phi = phi_m2_1(jac_order + 2)
        .scale_by_series(&j.q_derivative(), 2)
        .map_err(|e| WhError::Unsupported(e.to_string()))?;
    let extra = tensor_principal_part_with(f, &dj_phi)?;
    if extra.constant.is_zero() {
        return Err(WhError::Unsupported(format!("cannot clear the constant term of F_{}", f.pole_order())));
    }
    let t = -(&base.constant / &extra.constant);
    let out = base.combine(&extra, &t);
    debug_assert!(out.constant.is_zero());
    Ok(out)
}

/// The five-row table `{4m+23 ↦ 1, 4m ↦ 10, 15 ↦ c_m(2), 11 ↦ c_m(3),
/// 7 ↦ c_m(4)}` read directly off `f_m`.
///
/// It agrees with [`tensor_principal_part`] for `m ≤ 17`; from `m = 18` on
/// the `−64ζ^{±1}q` and `108q` terms of `φ₀,₁` produce further rows.
pub fn printed_table(f: &WHForm) -> BTreeMap<i64, Rat> {
    let m = f.pole_order();
    let mut out = BTreeMap::new();
    out.insert(4 * m + LEVEL, Rat::one());
    out.insert(4 * m, Rat::from_integer(10.into()));
    for (d, n) in [(15, 2), (11, 3), (7, 4)] {
        *out.entry(d).or_insert_with(Rat::zero) += f.c(n);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        assert_eq!(residue_for(7), Some(19));
        assert_eq!(residue_for(11), Some(9));
        assert_eq!(residue_for(23), Some(23));
        assert_eq!(residue_for(92), Some(0));
        assert_eq!(residue_for(1), None);
        assert!(PrincipalPartTable::is_self_paired(115));
        assert!(!PrincipalPartTable::is_self_paired(43));
    }
}
