//! Theta series of ideal classes, genus Eisenstein series and the
//! Siegel–Weil identity.

use std::collections::BTreeMap;

use num_integer::{Integer, Roots};
use num_traits::{One, Zero};
use qseries::{Exp, FracSeries, Rat};
use quadfield::{ClassGroup, Discriminant, IdealClass, QuadForm};
use serde_json::{json, Value};

use crate::fqm::{FiniteQuadModule, SublatticeData};
use crate::ThetaError;

/// A vector-valued q-series: one [`FracSeries`] per element of a cyclic
/// finite quadratic module.
#[derive(Clone, Debug, PartialEq)]
pub struct VVSeries {
    module: FiniteQuadModule,
    components: Vec<FracSeries>,
}

impl VVSeries {
    /// Wraps components indexed by `0..module.order()`.
    pub fn new(module: FiniteQuadModule, components: Vec<FracSeries>) -> Result<Self, ThetaError> {
        if components.len() as u64 != module.order() {
            return Err(ThetaError::IncompatibleModules);
        }
        Ok(VVSeries { module, components })
    }

    /// The underlying module.
    pub fn module(&self) -> &FiniteQuadModule {
        &self.module
    }

    /// Component `μ`.
    pub fn component(&self, mu: u64) -> &FracSeries {
        &self.components[(mu % self.module.order()) as usize]
    }

    /// All components.
    pub fn components(&self) -> &[FracSeries] {
        &self.components
    }

    /// `Σ_μ f_μ`.
    pub fn collapse(&self) -> FracSeries {
        self.components.iter().fold(FracSeries::zero(), |acc, c| acc.add_series(c))
    }

    /// True if `f_μ = f_{−μ}` for every `μ`.
    pub fn is_symmetric(&self) -> bool {
        (0..self.module.order()).all(|mu| self.component(mu) == self.component(self.module.neg(mu)))
    }

    /// True if every exponent of component `μ` lies in `sign·Q(μ) + ℤ`.
    pub fn exponents_match(&self, sign: i64) -> bool {
        (0..self.module.order()).all(|mu| {
            let target = self.module.q(mu) * sign;
            self.component(mu).terms().all(|(e, _)| (e - target).is_integer())
        })
    }

    /// Restriction to a sublattice (see [`SublatticeData::restrict`]).
    pub fn res_map(&self, data: &SublatticeData) -> Result<VVSeries, ThetaError> {
        if data.quotient != self.module {
            return Err(ThetaError::IncompatibleModules);
        }
        VVSeries::new(data.big.clone(), data.restrict(&self.components))
    }

    /// Trace from a sublattice (see [`SublatticeData::trace`]).
    pub fn tr_map(&self, data: &SublatticeData) -> Result<VVSeries, ThetaError> {
        if data.big != self.module {
            return Err(ThetaError::IncompatibleModules);
        }
        VVSeries::new(data.quotient.clone(), data.trace(&self.components))
    }

    /// `{module, components: {"μ": FracSeries}}`.
    pub fn to_json(&self) -> Value {
        let comps: serde_json::Map<String, Value> =
            self.components.iter().enumerate().map(|(i, c)| (i.to_string(), c.to_json())).collect();
        json!({ "module": self.module.to_json(), "components": comps })
    }
}

fn floor_div(x: i128, d: i128) -> i128 {
    x.div_euclid(d)
}

fn ceil_div(x: i128, d: i128) -> i128 {
    -(-x).div_euclid(d)
}

/// Representation counts `#{(x, y) : f(x, y) = n}` for `0 ≤ n < order`.
pub fn representation_counts(f: &QuadForm, order: u64) -> Vec<u64> {
    let (a, b) = (f.a as i128, f.b as i128);
    let dabs = -(f.disc() as i128);
    let n = order as i128;
    let mut counts = vec![0u64; order as usize];
    // 4a·f(x, y) = (2ax + by)² + |D|y²
    let ymax = (4 * a * n / dabs).sqrt() + 1;
    for y in -ymax..=ymax {
        let rest = 4 * a * n - dabs * y * y;
        if rest <= 0 {
            continue;
        }
        let t = rest.sqrt() + 1;
        let xlo = floor_div(-t - b * y, 2 * a);
        let xhi = ceil_div(t - b * y, 2 * a);
        for x in xlo..=xhi {
            let v = f.a as i128 * x * x + b * x * y + f.c as i128 * y * y;
            if v >= 0 && v < n {
                counts[v as usize] += 1;
            }
        }
    }
    counts
}

/// `θ_𝔞 = Σ_{x ∈ 𝔞} q^{N(x)/N(𝔞)}` for the class `c`, known below `order`.
pub fn theta_ideal(group: &ClassGroup, c: IdealClass, order: u64) -> FracSeries {
    theta_of_form(&group.form(c), order)
}

/// The theta series of a positive definite form, known below `order`.
pub fn theta_of_form(f: &QuadForm, order: u64) -> FracSeries {
    let counts = representation_counts(f, order);
    FracSeries::from_dense(
        1,
        Exp::zero(),
        counts.into_iter().map(|c| Rat::from_integer((c as i64).into())).collect(),
        Some(Exp::from_integer(order as i64)),
    )
}

/// An equivalent form whose first coefficient is coprime to `D`, with the
/// transforming matrix.
fn coprime_representative(f: &QuadForm) -> QuadForm {
    let d = f.disc().abs();
    for bound in 1i64.. {
        for p in -bound..=bound {
            for r in -bound..=bound {
                if p.gcd(&r) != 1 || f.eval(p, r).gcd(&d) != 1 {
                    continue;
                }
                let (g, u, v) = {
                    let e = p.extended_gcd(&r);
                    (e.gcd, e.x, e.y)
                };
                debug_assert_eq!(g, 1);
                // [[p, −v], [r, u]] has determinant pu + rv = 1
                return f.transform([[p, -v], [r, u]]);
            }
        }
    }
    unreachable!()
}

/// The vector-valued theta function of the lattice in class `c`:
/// components over `μ ∈ L′/L ≅ ℤ/|D|` with exponents in `(1/|D|)ℤ`,
/// known below `order`.
///
/// `L′/L` carries `Q(μ) = k·μ²/|D|`; labels are normalized so that `k` is
/// the inverse of 4 mod `|D|` whenever the class lies in the principal
/// genus, making all such vectors share one module.  Collapsing the
/// components and rescaling `τ ↦ |D|τ` gives [`theta_ideal`].
pub fn theta_vector(group: &ClassGroup, c: IdealClass, order: Exp) -> Result<VVSeries, ThetaError> {
    let d = group.discriminant();
    if d.value() % 2 == 0 || !quadfield::is_fundamental(d.value()) {
        return Err(ThetaError::UnsupportedDiscriminant(d.value()));
    }
    let n = d.abs() as i64;
    let f = coprime_representative(&group.form(c));
    let (a, b) = (f.a, f.b);
    let inv4a = modinv((4 * a).rem_euclid(n), n);
    let inv4 = modinv(4, n);
    // relabel μ ↦ λμ so that the module is Q(μ) = 4⁻¹μ²/|D| when possible
    let lambda = (1..n).find(|l| l.gcd(&n) == 1 && (inv4 * l % n * l % n) == inv4a % n).unwrap_or(1);
    let k = (inv4a * modinv(lambda * lambda % n, n)).rem_euclid(n);
    let module = FiniteQuadModule::cyclic(n as u64, Exp::new(k, n))?;
    // points of L′ are Gram⁻¹(u, v) with value f′(u, v)/|D|,
    // f′ = [c, −b, a]; their class in L′/L is bu − 2av
    let dual = QuadForm::new(f.c, -f.b, f.a);
    let bound = (order * Exp::from_integer(n)).ceil().to_integer();
    let mut comps: Vec<BTreeMap<i64, i64>> = vec![BTreeMap::new(); n as usize];
    let (fa, fb) = (dual.a as i128, dual.b as i128);
    let ymax = (4 * fa * bound as i128 / n as i128).sqrt() + 1;
    for v in -ymax..=ymax {
        let rest = 4 * fa * bound as i128 - n as i128 * v * v;
        if rest <= 0 {
            continue;
        }
        let t = rest.sqrt() + 1;
        for u in floor_div(-t - fb * v, 2 * fa)..=ceil_div(t - fb * v, 2 * fa) {
            let val = dual.eval(u as i64, v as i64);
            if val < bound && Exp::new(val, n) < order {
                let raw = (b as i128 * u - 2 * a as i128 * v).rem_euclid(n as i128) as i64;
                let mu = (raw * lambda).rem_euclid(n);
                *comps[mu as usize].entry(val).or_insert(0) += 1;
            }
        }
    }
    let components = comps
        .into_iter()
        .map(|m| {
            FracSeries::from_terms(m.into_iter().map(|(e, c)| (Exp::new(e, n), Rat::from_integer(c.into()))), Some(order))
        })
        .collect();
    VVSeries::new(module, components)
}

fn modinv(a: i64, n: i64) -> i64 {
    let e = a.rem_euclid(n).extended_gcd(&n);
    assert_eq!(e.gcd, 1, "{a} is not invertible mod {n}");
    e.x.rem_euclid(n)
}

/// The genus Eisenstein series
/// `E_𝔄 = 1 + (w/|𝔄|)·Σ_{n ≥ 1} ρ_𝔄(n) qⁿ` of the genus with index `genus`,
/// known below `order` (`|𝔄|` is the number of classes in the genus; for a
/// single genus this is the class number).
pub fn genus_eisenstein(group: &ClassGroup, genus: usize, order: u64) -> FracSeries {
    let w = group.units() as i64;
    let size = group.genus_size() as i64;
    let mut coeffs = vec![Rat::one()];
    for n in 1..order {
        let rho = group.count_ideals_in_genus(n, genus) as i64;
        coeffs.push(Rat::new((w * rho).into(), size.into()));
    }
    FracSeries::from_dense(1, Exp::zero(), coeffs, Some(Exp::from_integer(order as i64)))
}

/// Checks `Σ_{𝔟 ∈ Cl} θ_{𝔞𝔟²} = h·E_𝔄` for every genus, using the
/// supplied class theta series (`thetas[i]` for class `i`).
pub fn siegel_weil_holds(group: &ClassGroup, thetas: &[FracSeries], order: u64) -> bool {
    let h = group.order() as i64;
    (0..group.genus_count()).all(|genus| {
        let a = group.classes().find(|c| group.genus_of(*c) == genus).expect("nonempty genus");
        let lhs = group.classes().fold(FracSeries::zero(), |acc, b| {
            let cls = group.compose(a, group.compose(b, b));
            acc.add_series(&thetas[cls.0])
        });
        let rhs = genus_eisenstein(group, genus, order).scale(&Rat::from_integer(h.into()));
        lhs.truncate(Exp::from_integer(order as i64)) == rhs
    })
}

/// The Siegel–Weil identity for all genera, with theta series computed by
/// lattice enumeration to `order`.
pub fn siegel_weil_check(group: &ClassGroup, order: u64) -> bool {
    let thetas: Vec<FracSeries> = group.classes().map(|c| theta_ideal(group, c, order)).collect();
    siegel_weil_holds(group, &thetas, order)
}

fn character_support_check(s: &FracSeries, d: Discriminant, forbidden: i32) -> bool {
    s.terms().all(|(e, _)| e.is_integer() && d.chi(e.to_integer()) != forbidden)
}

/// True if every nonzero coefficient of `s` sits at an integer `n` with
/// `χ_D(n) ≠ −1` (the plus space condition).
pub fn plus_space_check(s: &FracSeries, d: Discriminant) -> bool {
    character_support_check(s, d, -1)
}

/// True if every nonzero coefficient sits at `n` with `χ_D(n) ≠ +1`.
pub fn minus_space_check(s: &FracSeries, d: Discriminant) -> bool {
    character_support_check(s, d, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadfield::class_group;

    fn ints(s: &FracSeries, upto: i64) -> Vec<i64> {
        (0..upto).map(|n| s.int_coeff_at(n).unwrap().try_into().unwrap()).collect()
    }

    #[test]
    fn class_thetas_for_minus_23() {
        let g = class_group(-23).unwrap();
        let t0 = theta_ideal(&g, g.identity(), 13);
        assert_eq!(ints(&t0, 13), vec![1, 2, 0, 0, 2, 0, 4, 0, 4, 2, 0, 0, 4]);
        let c = g.index_of(&QuadForm::new(2, 1, 3)).unwrap();
        let t1 = theta_ideal(&g, c, 7);
        assert_eq!(ints(&t1, 7), vec![1, 0, 2, 2, 2, 0, 2]);
        assert_eq!(t1.trunc(), Some(Exp::from_integer(7)));
    }

    #[test]
    fn eisenstein_for_minus_23() {
        let g = class_group(-23).unwrap();
        let e = genus_eisenstein(&g, 0, 6);
        let expect = [(0, 1, 1), (1, 2, 3), (2, 4, 3), (3, 4, 3), (4, 2, 1), (5, 0, 1)];
        for (n, p, q) in expect {
            assert_eq!(e.coeff_at(n).unwrap(), Rat::new(p.into(), q.into()));
        }
    }

    #[test]
    fn siegel_weil_small_cases() {
        assert!(siegel_weil_check(&class_group(-23).unwrap(), 100));
        assert!(siegel_weil_check(&class_group(-7).unwrap(), 100));
        let g = class_group(-23).unwrap();
        let mut thetas: Vec<FracSeries> = g.classes().map(|c| theta_ideal(&g, c, 50)).collect();
        thetas[1] = thetas[1].add_series(&FracSeries::monomial(Rat::one(), Exp::from_integer(7)));
        assert!(!siegel_weil_holds(&g, &thetas, 50));
    }

    #[test]
    fn plus_and_minus_support() {
        let d = Discriminant::fundamental(-23).unwrap();
        let g = class_group(-23).unwrap();
        assert!(plus_space_check(&theta_ideal(&g, g.identity(), 200), d));
        let bad = FracSeries::from_ints(0, &[1, 0, 0, 0, 0, 33], true);
        assert!(!plus_space_check(&bad, d));
        assert!(minus_space_check(&FracSeries::from_ints(5, &[1], true), d));
        assert!(!minus_space_check(&FracSeries::from_ints(2, &[1], true), d));
    }

    #[test]
    fn vector_theta_basic_shape() {
        let g = class_group(-23).unwrap();
        let v = theta_vector(&g, g.identity(), Exp::from_integer(3)).unwrap();
        assert_eq!(v.component(0).coeff(Exp::zero()), Some(Rat::one()));
        assert!(v.is_symmetric());
        assert!(v.exponents_match(1));
        assert_eq!(v.module(), &FiniteQuadModule::cyclic(23, Exp::new(6, 23)).unwrap());
        let at_one: Rat = (0..23).map(|mu| v.component(mu).coeff(Exp::new(1, 23)).unwrap()).sum();
        assert_eq!(at_one, Rat::from_integer(2.into()));
    }
}
