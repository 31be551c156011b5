//! Jacobi forms stored by discriminant and residue class.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use qseries::{Exp, FracSeries, Rat};
use thetaseries::{FiniteQuadModule, VVSeries};

use crate::JacobiError;

/// A (weakly holomorphic) Jacobi form `Σ c(n, r) qⁿ ζʳ` of integral
/// weight and positive index `m`.
///
/// Coefficients are stored as `C(Δ, ρ)` with `Δ = 4nm − r²` and
/// `ρ = r mod 2m`, which encodes the elliptic transformation law; `c(n, r)`
/// is known for integral `n < trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiForm {
    weight: i32,
    index: i64,
    coeffs: BTreeMap<(i64, i64), Rat>,
    trunc: i64,
}

impl JacobiForm {
    /// Builds a form from coefficients `c(n, r)` given as
    /// `((n, r), value)`, known for `n < trunc`.
    ///
    /// Errors with `NotElliptic` if two entries with the same `(Δ, ρ)`
    /// disagree.
    pub fn from_rows<I>(weight: i32, index: i64, rows: I, trunc: i64) -> Result<Self, JacobiError>
    where
        I: IntoIterator<Item = ((i64, i64), Rat)>,
    {
        assert!(index >= 1, "Jacobi index must be positive");
        let mut coeffs: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for ((n, r), c) in rows {
            if n >= trunc {
                continue;
            }
            let key = (4 * n * index - r * r, r.rem_euclid(2 * index));
            match coeffs.get(&key) {
                Some(old) if *old != c => return Err(JacobiError::NotElliptic { n, r }),
                _ => {
                    if !c.is_zero() {
                        coeffs.insert(key, c);
                    }
                }
            }
        }
        Ok(JacobiForm { weight, index, coeffs, trunc })
    }

    fn from_keys(weight: i32, index: i64, coeffs: BTreeMap<(i64, i64), Rat>, trunc: i64) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        JacobiForm { weight, index, coeffs, trunc }
    }

    /// Weight `k`.
    pub fn weight(&self) -> i32 {
        self.weight
    }

    /// Index `m`.
    pub fn index(&self) -> i64 {
        self.index
    }

    /// Coefficients are known for `n < trunc`.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Smallest discriminant `4nm − r²` with a nonzero coefficient.
    pub fn min_discriminant(&self) -> Option<i64> {
        self.coeffs.keys().map(|k| k.0).min()
    }

    /// Stored `(Δ, ρ) ↦ C(Δ, ρ)` data.
    pub fn by_discriminant(&self) -> &BTreeMap<(i64, i64), Rat> {
        &self.coeffs
    }

    fn minimal_rep(&self, r: i64) -> i64 {
        let m = self.index;
        let rho = r.rem_euclid(2 * m);
        if rho > m {
            rho - 2 * m
        } else {
            rho
        }
    }

    /// `c(n, r)`; `None` when `n ≥ trunc`.
    pub fn coeff(&self, n: i64, r: i64) -> Option<Rat> {
        if n >= self.trunc {
            return None;
        }
        let key = (4 * n * self.index - r * r, r.rem_euclid(2 * self.index));
        Some(self.coeffs.get(&key).cloned().unwrap_or_else(Rat::zero))
    }

    /// Lowest `n` with a nonzero coefficient.
    pub fn min_n(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .map(|((d, rho), _)| {
                let r0 = self.minimal_rep(*rho);
                (d + r0 * r0).div_euclid(4 * self.index)
            })
            .min()
    }

    /// All nonzero `c(n, r)` with `n < trunc`, as `((n, r), c)` in
    /// increasing `(n, r)` order.
    pub fn rows(&self) -> Vec<((i64, i64), Rat)> {
        let m = self.index;
        let mut out = Vec::new();
        for ((d, rho), c) in &self.coeffs {
            let r0 = self.minimal_rep(*rho);
            // n = (Δ + r²)/4m grows with |r| along r = r0 + 2mk
            for dir in [1i64, -1] {
                let mut k = if dir == 1 { 0 } else { -1 };
                loop {
                    let r = r0 + 2 * m * k;
                    let n = (d + r * r) / (4 * m);
                    if n >= self.trunc {
                        break;
                    }
                    out.push(((n, r), c.clone()));
                    k += dir;
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// The row of `qⁿ` as `[(r, c(n, r))]` with nonzero entries.
    pub fn row(&self, n: i64) -> Vec<(i64, Rat)> {
        self.rows().into_iter().filter(|((k, _), _)| *k == n).map(|((_, r), c)| (r, c)).collect()
    }

    /// Sum of two forms of equal weight and index.
    pub fn add(&self, other: &JacobiForm) -> Result<JacobiForm, JacobiError> {
        if self.weight != other.weight || self.index != other.index {
            return Err(JacobiError::Incompatible);
        }
        let trunc = self.trunc.min(other.trunc);
        let mut coeffs = BTreeMap::new();
        for (k, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            *coeffs.entry(*k).or_insert_with(Rat::zero) += c;
        }
        let f = JacobiForm::from_keys(self.weight, self.index, coeffs, trunc);
        Ok(f.truncate(trunc))
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rat) -> JacobiForm {
        let coeffs = self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect();
        JacobiForm::from_keys(self.weight, self.index, coeffs, self.trunc)
    }

    /// Drops coefficients with `n ≥ trunc`.
    pub fn truncate(&self, trunc: i64) -> JacobiForm {
        let trunc = trunc.min(self.trunc);
        let m = self.index;
        let coeffs = self
            .coeffs
            .iter()
            .filter(|((d, rho), _)| {
                let r0 = self.minimal_rep(*rho);
                (d + r0 * r0) / (4 * m) < trunc
            })
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        JacobiForm { weight: self.weight, index: m, coeffs, trunc }
    }

    /// Product `φ·ψ` (weights and indices add).
    pub fn mul(&self, other: &JacobiForm) -> JacobiForm {
        let (Some(na), Some(nb)) = (self.min_n(), other.min_n()) else {
            let trunc = self.trunc.min(other.trunc);
            return JacobiForm::from_keys(self.weight + other.weight, self.index + other.index, BTreeMap::new(), trunc);
        };
        let trunc = (self.trunc + nb).min(other.trunc + na);
        let m = self.index + other.index;
        let ra = self.rows();
        let rb = other.rows();
        let mut acc: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for ((n1, r1), c1) in &ra {
            for ((n2, r2), c2) in &rb {
                let n = n1 + n2;
                if n >= trunc {
                    continue;
                }
                *acc.entry((n, r1 + r2)).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        JacobiForm::from_rows(self.weight + other.weight, m, acc, trunc).expect("products of Jacobi forms are elliptic")
    }

    /// `φ^k` for `k ≥ 1`.
    pub fn pow(&self, k: u32) -> JacobiForm {
        assert!(k >= 1, "power must be positive");
        (1..k).fold(self.clone(), |acc, _| acc.mul(self))
    }

    /// Multiplies by a scalar modular form `f(τ)` of weight `weight` with
    /// integral exponents.
    pub fn scale_by_series(&self, f: &FracSeries, weight: i32) -> Result<JacobiForm, JacobiError> {
        if f.exponent_denominator() != 1 {
            return Err(JacobiError::Incompatible);
        }
        let fmin = f.valuation().map(|e| e.to_integer()).unwrap_or(0);
        let ftrunc = f.trunc().map(|t| t.ceil().to_integer()).unwrap_or(i64::MAX / 4);
        let nmin = self.min_n().unwrap_or(0);
        let trunc = (self.trunc + fmin).min(ftrunc.saturating_add(nmin));
        let mut acc: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for ((n, r), c) in self.rows() {
            for (e, a) in f.terms() {
                let k = n + e.to_integer();
                if k < trunc {
                    *acc.entry((k, r)).or_insert_with(Rat::zero) += &c * a;
                }
            }
        }
        JacobiForm::from_rows(self.weight + weight, self.index, acc, trunc)
    }

    /// `φ(τ, 0) = Σ_n (Σ_r c(n, r)) qⁿ`.
    pub fn specialize_z0(&self) -> FracSeries {
        let mut sums: BTreeMap<i64, Rat> = BTreeMap::new();
        for ((n, _), c) in self.rows() {
            *sums.entry(n).or_insert_with(Rat::zero) += c;
        }
        FracSeries::from_terms(sums.into_iter().map(|(n, c)| (Exp::from_integer(n), c)), Some(Exp::from_integer(self.trunc)))
    }

    /// True if `c(n, r) = c(n, −r)` for all known coefficients.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().all(|((d, rho), c)| {
            let neg = (2 * self.index - rho) % (2 * self.index);
            self.coeffs.get(&(*d, neg)) == Some(c)
        })
    }
}

/// The module `ℤ/2m` with `Q(x) = −x²/4m` carrying theta decompositions.
pub fn decomposition_module(m: i64) -> FiniteQuadModule {
    FiniteQuadModule::cyclic(2 * m as u64, Exp::new(-1, 4 * m)).expect("−x²/4m is nondegenerate on ℤ/2m")
}

/// The theta decomposition `φ = Σ_ρ h_ρ(τ)·θ_{m,ρ}(τ, z)`:
/// `h_ρ = Σ_Δ C(Δ, ρ) q^{Δ/4m}` over `ℤ/2m` with `Q(x) = −x²/4m`.
pub fn theta_decomposition(phi: &JacobiForm) -> VVSeries {
    let m = phi.index;
    let comps = (0..2 * m)
        .map(|rho| {
            let r0 = phi.minimal_rep(rho);
            let terms = phi
                .coeffs
                .iter()
                .filter(|((_, p), _)| *p == rho)
                .map(|((d, _), c)| (Exp::new(*d, 4 * m), c.clone()));
            FracSeries::from_terms(terms, Some(Exp::new(4 * m * phi.trunc - r0 * r0, 4 * m)))
        })
        .collect();
    VVSeries::new(decomposition_module(m), comps).expect("2m components")
}

/// Inverse of [`theta_decomposition`].
pub fn recompose(h: &VVSeries, weight: i32) -> Result<JacobiForm, JacobiError> {
    let order = h.module().order() as i64;
    if order % 2 != 0 {
        return Err(JacobiError::Incompatible);
    }
    let m = order / 2;
    let mut coeffs = BTreeMap::new();
    let mut trunc = i64::MAX;
    for rho in 0..2 * m {
        let r0 = if rho > m { rho - 2 * m } else { rho };
        let comp = h.component(rho as u64);
        for (e, c) in comp.terms() {
            let d = e * Exp::from_integer(4 * m);
            if !d.is_integer() || (d.to_integer() + r0 * r0).rem_euclid(4 * m) != 0 {
                return Err(JacobiError::Incompatible);
            }
            coeffs.insert((d.to_integer(), rho), c.clone());
        }
        if let Some(t) = comp.trunc() {
            let bound = (t + Exp::new(r0 * r0, 4 * m)).ceil().to_integer();
            trunc = trunc.min(bound);
        }
    }
    let f = JacobiForm::from_keys(weight, m, coeffs, trunc);
    Ok(f.truncate(trunc))
}

/// The theta-null vector `θ_ρ(τ) = Σ_{r ≡ ρ (2m)} q^{r²/4m}` over `ℤ/2m`
/// with `Q(x) = x²/4m`, known below `order`.
pub fn theta_null_vector(m: i64, order: i64) -> VVSeries {
    let module = FiniteQuadModule::cyclic(2 * m as u64, Exp::new(1, 4 * m)).expect("x²/4m is nondegenerate on ℤ/2m");
    let mut rows: Vec<Vec<(Exp, Rat)>> = vec![Vec::new(); 2 * m as usize];
    let mut r = 0i64;
    while r * r < 4 * m * order {
        for s in if r == 0 { vec![0] } else { vec![r, -r] } {
            rows[s.rem_euclid(2 * m) as usize].push((Exp::new(s * s, 4 * m), Rat::one()));
        }
        r += 1;
    }
    let comps = rows.into_iter().map(|t| FracSeries::from_terms(t, Some(Exp::from_integer(order)))).collect();
    VVSeries::new(module, comps).expect("2m components")
}

/// `⟨h, θ⟩ = Σ_ρ h_ρ·θ_ρ` for component vectors of the same length.
pub fn pair_with_theta(h: &VVSeries, theta: &VVSeries) -> Result<FracSeries, JacobiError> {
    if h.module().order() != theta.module().order() {
        return Err(JacobiError::Incompatible);
    }
    Ok(h.components().iter().zip(theta.components()).fold(FracSeries::zero(), |acc, (a, b)| acc.add_series(&a.mul_series(b))))
}

/// `⟨φ₋₂,₁^j φ₀,₁^{A−j}, Θ⟩`, which equals `φ₋₂,₁(τ,0)^j·φ₀,₁(τ,0)^{A−j}`:
/// the constant `12^A` for `j = 0` and `0` otherwise.
pub fn fg_pairing(a: u32, j: u32, order: i64) -> Result<FracSeries, JacobiError> {
    if j > a || a == 0 {
        return Err(JacobiError::Incompatible);
    }
    let f = crate::phi_m2_1(order);
    let g = crate::phi_0_1(order);
    let prod = match (j, a - j) {
        (0, k) => g.pow(k),
        (i, 0) => f.pow(i),
        (i, k) => f.pow(i).mul(&g.pow(k)),
    };
    let h = theta_decomposition(&prod);
    let theta = theta_null_vector(a as i64, prod.trunc());
    pair_with_theta(&h, &theta)
}
