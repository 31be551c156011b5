//! Cyclic finite quadratic modules and sublattice restriction / trace.

use num_integer::Integer;
use num_traits::Zero;
use qseries::Exp;

use crate::ThetaError;

fn frac(x: Exp) -> Exp {
    x - x.floor()
}

/// A cyclic group `ℤ/n` with a quadratic form `Q: ℤ/n → ℚ/ℤ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuadModule {
    order: u64,
    q_values: Vec<Exp>,
}

impl FiniteQuadModule {
    /// `ℤ/n` with `Q(x) = coeff·x² mod 1`.
    ///
    /// Errors with `IllDefined` unless `Q(x + n) ≡ Q(x)` (that is,
    /// `2n·coeff` and `n²·coeff` are integers) and with `Degenerate` if the
    /// associated bilinear form is degenerate.
    pub fn cyclic(n: u64, coeff: Exp) -> Result<Self, ThetaError> {
        let nn = Exp::from_integer(n as i64);
        if !(coeff * nn * 2).is_integer() || !(coeff * nn * nn).is_integer() {
            return Err(ThetaError::IllDefined);
        }
        let q_values = (0..n as i64).map(|x| frac(coeff * Exp::from_integer(x * x))).collect();
        Self::from_values(q_values)
    }

    /// A module given by its table of values `Q(0), …, Q(n − 1)` (each read
    /// mod 1); checks `Q(−x) = Q(x)` and nondegeneracy.
    pub fn from_values(values: Vec<Exp>) -> Result<Self, ThetaError> {
        let n = values.len() as u64;
        if n == 0 {
            return Err(ThetaError::IllDefined);
        }
        let m = FiniteQuadModule { order: n, q_values: values.into_iter().map(frac).collect() };
        if !m.q_values[0].is_zero() || (0..n).any(|x| m.q(x) != m.q(m.neg(x))) {
            return Err(ThetaError::IllDefined);
        }
        if !m.is_nondegenerate() {
            return Err(ThetaError::Degenerate);
        }
        Ok(m)
    }

    /// Group order `n`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `Q(x)` in `[0, 1)`.
    pub fn q(&self, x: u64) -> Exp {
        self.q_values[(x % self.order) as usize]
    }

    /// `−x`.
    pub fn neg(&self, x: u64) -> u64 {
        (self.order - x % self.order) % self.order
    }

    /// `x + y`.
    pub fn add(&self, x: u64, y: u64) -> u64 {
        (x + y) % self.order
    }

    /// `(x, y) = Q(x + y) − Q(x) − Q(y) mod 1`.
    pub fn bilinear(&self, x: u64, y: u64) -> Exp {
        frac(self.q(self.add(x, y)) - self.q(x) - self.q(y))
    }

    /// True if `(x, ·) ≡ 0` only for `x = 0`.
    pub fn is_nondegenerate(&self) -> bool {
        (1..self.order).all(|x| (0..self.order).any(|y| !self.bilinear(x, y).is_zero()))
    }

    /// The signature mod 8 from Milgram's formula
    /// `Σ_x e(Q(x)) = √n·e(sig/8)`.
    pub fn signature_mod8(&self) -> u32 {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for x in 0..self.order {
            let t = 2.0 * std::f64::consts::PI * (*self.q(x).numer() as f64) / (*self.q(x).denom() as f64);
            re += t.cos();
            im += t.sin();
        }
        let angle = im.atan2(re) / (2.0 * std::f64::consts::PI) * 8.0;
        (angle.round() as i64).rem_euclid(8) as u32
    }

    /// The orthogonal sum with a module of coprime order, identified with a
    /// cyclic module through the Chinese remainder theorem
    /// (`x ↦ (x mod n₁, x mod n₂)`).
    pub fn crt_sum(&self, other: &FiniteQuadModule) -> Option<FiniteQuadModule> {
        if self.order.gcd(&other.order) != 1 {
            return None;
        }
        let n = self.order * other.order;
        let values = (0..n).map(|x| self.q(x % self.order) + other.q(x % other.order)).collect();
        FiniteQuadModule::from_values(values).ok()
    }

    /// A unit `λ` with `other.q(λx) = self.q(x)` for all `x`, if one exists.
    pub fn isometry_multiplier(&self, other: &FiniteQuadModule) -> Option<u64> {
        if self.order != other.order {
            return None;
        }
        (1..self.order.max(2))
            .filter(|l| l.gcd(&self.order) == 1)
            .find(|&l| (0..self.order).all(|x| other.q(l * x % self.order) == self.q(x)))
    }

    /// JSON view `{order, q: [[num, den], …]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let q: Vec<[i64; 2]> = self.q_values.iter().map(|v| [*v.numer(), *v.denom()]).collect();
        serde_json::json!({ "order": self.order, "q": q })
    }
}

/// Inclusion data for lattices `M ⊆ L`: the isotropic subgroup
/// `L/M ⊆ M′/M`, its orthogonal `L′/M`, and the projection
/// `L′/M → L′/L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeData {
    /// `M′/M`.
    pub big: FiniteQuadModule,
    /// `L′/L`.
    pub quotient: FiniteQuadModule,
    /// `projection[γ] = Some(λ)` for `γ ∈ L′/M`, `None` outside.
    pub projection: Vec<Option<u64>>,
}

impl SublatticeData {
    /// Validates explicit inclusion data: the domain of `projection` must be
    /// a subgroup, the map additive, surjective and `Q`-preserving.
    pub fn new(big: FiniteQuadModule, quotient: FiniteQuadModule, projection: Vec<Option<u64>>) -> Result<Self, ThetaError> {
        let n = big.order();
        if projection.len() as u64 != n || projection[0] != Some(0) {
            return Err(ThetaError::IncompatibleModules);
        }
        let domain: Vec<u64> = (0..n).filter(|g| projection[*g as usize].is_some()).collect();
        for &x in &domain {
            let px = projection[x as usize].unwrap();
            if px >= quotient.order() || big.q(x) != quotient.q(px) {
                return Err(ThetaError::IncompatibleModules);
            }
            for &y in &domain {
                let py = projection[y as usize].unwrap();
                match projection[big.add(x, y) as usize] {
                    Some(s) if s == quotient.add(px, py) => {}
                    _ => return Err(ThetaError::IncompatibleModules),
                }
            }
        }
        let mut hit = vec![false; quotient.order() as usize];
        for p in projection.iter().flatten() {
            hit[*p as usize] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(ThetaError::IncompatibleModules);
        }
        Ok(SublatticeData { big, quotient, projection })
    }

    /// The identity inclusion `L = M`.
    pub fn identity(m: &FiniteQuadModule) -> Self {
        SublatticeData { big: m.clone(), quotient: m.clone(), projection: (0..m.order()).map(Some).collect() }
    }

    /// Inclusion data generated by an isotropic element `h ∈ M′/M`:
    /// `L/M = ⟨h⟩`, `L′/L = ⟨h⟩^⊥/⟨h⟩`.
    pub fn from_isotropic(big: &FiniteQuadModule, h: u64) -> Result<Self, ThetaError> {
        let n = big.order();
        let gen = h.gcd(&n);
        let isotropic_order = n / gen;
        if (0..isotropic_order).any(|k| !big.q(k * gen).is_zero()) {
            return Err(ThetaError::IncompatibleModules);
        }
        // the orthogonal complement of a subgroup of order k in ℤ/n is the
        // subgroup of order n/k, generated by k
        let perp_gen = isotropic_order;
        let perp_order = n / perp_gen;
        let quot_order = perp_order / isotropic_order;
        let values = (0..quot_order).map(|j| big.q(j * perp_gen)).collect();
        let quotient = FiniteQuadModule::from_values(values)?;
        let mut projection = vec![None; n as usize];
        for j in 0..perp_order {
            projection[(j * perp_gen) as usize] = Some(j % quot_order);
        }
        Self::new(big.clone(), quotient, projection)
    }

    /// `[L : M] = |L/M|`.
    pub fn index(&self) -> u64 {
        let domain = self.projection.iter().filter(|p| p.is_some()).count() as u64;
        domain / self.quotient.order()
    }

    /// Restriction `f ↦ f_M`: `(f_M)_γ = f_{γ + L}` on `L′/M`, zero
    /// elsewhere.
    pub fn restrict<T: Clone + Zero>(&self, f: &[T]) -> Vec<T> {
        assert_eq!(f.len() as u64, self.quotient.order());
        self.projection.iter().map(|p| p.map_or_else(T::zero, |l| f[l as usize].clone())).collect()
    }

    /// Trace `g ↦ g^L`: `(g^L)_λ = Σ_{γ ↦ λ} g_γ`.
    pub fn trace<T: Clone + Zero>(&self, g: &[T]) -> Vec<T> {
        assert_eq!(g.len() as u64, self.big.order());
        let mut out = vec![T::zero(); self.quotient.order() as usize];
        for (gamma, p) in self.projection.iter().enumerate() {
            if let Some(l) = p {
                let acc = std::mem::replace(&mut out[*l as usize], T::zero());
                out[*l as usize] = acc + g[gamma].clone();
            }
        }
        out
    }
}

/// The symmetric bilinear pairing `Σ_μ f_μ·g_μ` of coefficient vectors.
pub fn pair<T: Clone + Zero + std::ops::Mul<Output = T>>(f: &[T], g: &[T]) -> T {
    f.iter().zip(g).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_modules_for_minus_23() {
        let p = FiniteQuadModule::cyclic(23, Exp::new(6, 23)).unwrap();
        let n = FiniteQuadModule::cyclic(2, Exp::new(-1, 4)).unwrap();
        let l = FiniteQuadModule::cyclic(46, Exp::new(1, 92)).unwrap();
        let sum = p.crt_sum(&n).unwrap();
        assert_eq!(sum, l);
        assert_eq!(p.signature_mod8(), 2);
        assert_eq!(n.signature_mod8(), 7);
        assert_eq!(l.signature_mod8(), 1);
    }

    #[test]
    fn ill_defined_and_degenerate_forms_are_rejected() {
        assert_eq!(FiniteQuadModule::cyclic(5, Exp::new(1, 7)), Err(ThetaError::IllDefined));
        assert_eq!(FiniteQuadModule::cyclic(4, Exp::new(1, 2)), Err(ThetaError::Degenerate));
    }

    #[test]
    fn isotropic_quotient() {
        let m = FiniteQuadModule::cyclic(36, Exp::new(1, 72)).unwrap();
        let data = SublatticeData::from_isotropic(&m, 12).unwrap();
        assert_eq!(data.index(), 3);
        assert_eq!(data.quotient, FiniteQuadModule::cyclic(4, Exp::new(1, 8)).unwrap());
        assert!(SublatticeData::from_isotropic(&m, 6).is_err());
    }

    #[test]
    fn inconsistent_projection_is_rejected() {
        let m = FiniteQuadModule::cyclic(36, Exp::new(1, 72)).unwrap();
        let good = SublatticeData::from_isotropic(&m, 12).unwrap();
        let mut proj = good.projection.clone();
        proj[3] = Some(3);
        assert_eq!(SublatticeData::new(m, good.quotient, proj), Err(ThetaError::IncompatibleModules));
    }
}
