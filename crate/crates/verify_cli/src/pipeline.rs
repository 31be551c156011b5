//! The two sides of the verification and their comparison.
//!
//! Analytic side: `N_m = ∏_d Res(P_min, P̃_d)^{C(d)}`, where `P̃_d` is `P_d`
//! with every factor `P_min` removed.  Exponents may be rational (the
//! principal part at `m = 23` has denominators), so the norm is kept in
//! factored form: each resultant is factored and the exponents
//! `e_q = Σ_d C(d)·ord_q Res_d` are accumulated exactly.  Removing `P_min`
//! from `P_{23n²}` (`n ≥ 2`) replaces its vanishing factor by a derivative
//! that contributes `n` at each of the `h` roots, so the exponents are
//! regularized by `−2h·C(23n²)·ord_q(n)`.
//!
//! Arithmetic side: `Σ_𝔟 Z(m/23)_{𝔓₀^{σ(𝔟)}}` from local invariants and
//! ideal counts, never touching floating point.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use cycles::{cycle_multiplicities, Labeling, ResidueDegrees};
use heegner::{heegner_polynomial, minpoly_cm, CMContext, CmMinpoly, Convention, HeegnerCache, HeegnerPolynomial};
use localinv::diff_set;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use qseries::bigcomplex::real;
use qseries::{BigComplex, Exp, FracSeries, IPoly, RFunc, Rat};
use quadfield::{class_group, ClassGroup};
use rayon::prelude::*;
use whforms23::{residue_for, tensor_principal_part, FormFactory, PrincipalPartTable, WHForm, LEVEL};

use crate::config::VerifyConfig;
use crate::factor::factor;
use crate::report::{Checks, Report, VerificationRecord};
use crate::VerifyError;

/// A deliberate corruption of the input to `R_m`, used as a negative
/// control.
#[derive(Clone, Debug, PartialEq)]
pub enum Perturbation {
    /// Add `delta` to the exponent `C(d)` of `P_d`.
    PdExponent {
        /// The discriminant magnitude.
        d: i64,
        /// The shift.
        delta: i64,
    },
    /// Add `delta` to the coefficient `c(n)` of `f_m` before the principal
    /// part is read off.
    FmCoefficient {
        /// The exponent `n`.
        n: i64,
        /// The shift.
        delta: i64,
    },
}

/// One factor `P_d^{C(d)}` of `R_m`.
#[derive(Clone, Debug)]
pub struct FactorRow {
    /// The discriminant magnitude.
    pub d: i64,
    /// The effective exponent (`C(d)`, doubled for self-paired `d` under
    /// the double convention).
    pub exponent: Rat,
    /// How many copies of `P_min` were removed from `P_d`.
    pub stripped: u32,
    /// `Res(P_min, P̃_d) = ∏ᵢ P̃_d(xᵢ)`.
    pub resultant: BigInt,
}

/// The exact and numeric data of `R_m` at the roots of `P_min`.
#[derive(Clone, Debug)]
pub struct AnalyticSide {
    /// The index.
    pub m: i64,
    /// The convention used for self-paired divisors.
    pub convention: Convention,
    /// The factors of `R_m`.
    pub factors: Vec<FactorRow>,
    /// Regularized exponents `e_q` of `|N_m|`, zero entries removed.
    pub exponents: BTreeMap<BigUint, Rat>,
    /// Composite cofactors that did not factor.
    pub unfactored: Vec<BigUint>,
    /// The sign of `N_m` when every exponent is an integer.
    pub sign: Option<i8>,
    /// `−(1/12)·log|R_m(xᵢ)|` (regularized) at each root, as real parts.
    pub values: Vec<BigComplex>,
    /// Indices into `values` of the complex-conjugate roots.
    pub conjugate_pair: (usize, usize),
    /// Agreement of the factored norm with a direct resultant of the
    /// expanded numerator and denominator (only when every exponent is an
    /// integer).
    pub resultant_oracle: Option<bool>,
}

impl AnalyticSide {
    /// `Σᵢ values[i]`.
    pub fn value_sum(&self) -> BigComplex {
        let prec = self.values[0].precision();
        self.values.iter().fold(BigComplex::zero(prec), |acc, v| acc.add(v))
    }

    /// `|N_m|` as `numerator / denominator`, when every exponent is an
    /// integer.
    pub fn norm_fraction(&self) -> Option<(BigUint, BigUint)> {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (q, e) in &self.exponents {
            if !e.is_integer() {
                return None;
            }
            let k = e.to_integer().abs().to_u32()?;
            if e.is_positive() {
                num *= q.pow(k);
            } else {
                den *= q.pow(k);
            }
        }
        Some((num, den))
    }
}

/// The special-cycle prediction for `m/23`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticSide {
    /// The index.
    pub m: i64,
    /// `Diff(m/23)`.
    pub diff: Vec<u64>,
    /// The supporting prime when `|Diff| = 1`.
    pub prime: Option<u64>,
    /// `Σ_𝔟 Z(m/23)_{𝔓₀^{σ(𝔟)}}` for the principal class.
    pub cycle_sum: Rational64,
    /// `f_p` for the supporting prime under the configured residue degrees.
    pub residue_degree: Option<u32>,
}

/// How the self-paired convention was fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConventionResolution {
    /// The convention in force.
    pub chosen: Convention,
    /// True if chosen by the configuration rather than by data.
    pub fixed: bool,
    /// The index used to decide (the smallest one whose `R_m` involves a
    /// self-paired divisor), if any.
    pub decided_at: Option<i64>,
    /// Whether the exact degree identity held under each convention there.
    pub single_holds: Option<bool>,
    /// See `single_holds`.
    pub double_holds: Option<bool>,
}

/// The constants pinned from data: `K = e_p / ΣZ` at the first supported
/// index of each prime type.
#[derive(Clone, Debug, PartialEq)]
pub struct Pinned {
    /// `K` for ramified primes, with the index it was read at.
    pub k_ramified: Option<(i64, Rat)>,
    /// `K` for inert primes, with the index it was read at.
    pub k_inert: Option<(i64, Rat)>,
    /// `12·w_k`.
    pub constant: i64,
    /// The self-paired convention and how it was chosen.
    pub convention: ConventionResolution,
}

impl Pinned {
    /// `K` for the prime type of `p`.
    pub fn k_for(&self, p: u64) -> Option<&Rat> {
        let pinned = if LEVEL as u64 % p == 0 { &self.k_ramified } else { &self.k_inert };
        pinned.as_ref().map(|(_, k)| k)
    }

    /// `f_p = K / (12·w_k)` for ramified primes.
    pub fn f_ramified(&self) -> Option<Rat> {
        self.k_ramified.as_ref().map(|(_, k)| k / Rat::from_integer(self.constant.into()))
    }

    /// `f_p = K / (12·w_k)` for inert primes.
    pub fn f_inert(&self) -> Option<Rat> {
        self.k_inert.as_ref().map(|(_, k)| k / Rat::from_integer(self.constant.into()))
    }
}

/// Counters for the Heegner polynomial cache.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    /// Polynomials loaded from disk.
    pub hits: usize,
    /// Polynomials computed.
    pub misses: usize,
}

/// The verification pipeline for `D = −23`.
pub struct Pipeline {
    config: VerifyConfig,
    group: ClassGroup,
    ctx: CMContext,
    degrees: ResidueDegrees,
    factory: FormFactory,
    cache: Option<HeegnerCache>,
    forms: BTreeMap<i64, WHForm>,
    tables: BTreeMap<i64, PrincipalPartTable>,
    polys: BTreeMap<i64, HeegnerPolynomial>,
    minpoly: Option<CmMinpoly>,
    stats: CacheStats,
}

/// `ord_q(n)` for a machine integer.
fn valuation(q: &BigUint, n: u64) -> u32 {
    let Some(q) = q.to_u64() else { return 0 };
    let (mut n, mut e) = (n, 0);
    while n > 0 && n % q == 0 {
        n /= q;
        e += 1;
    }
    e
}

/// `n ≥ 2` with `d = 23n²`, if any.
fn self_intersection_index(d: i64) -> Option<u64> {
    if d % LEVEL != 0 {
        return None;
    }
    let s = d / LEVEL;
    let n = (s as f64).sqrt().round() as i64;
    (n >= 2 && n * n == s).then_some(n as u64)
}

impl Pipeline {
    /// A pipeline for the configuration (errors unless `D = −23`).
    pub fn new(config: VerifyConfig) -> Result<Self, VerifyError> {
        if config.discriminant != -LEVEL {
            return Err(VerifyError::UnsupportedDiscriminant(config.discriminant));
        }
        let group = class_group(config.discriminant)?;
        let ctx = CMContext { precision: config.precision_bits, q_bound: config.q_bound, ..CMContext::default() };
        let factory = FormFactory::new(config.order, config.m_max.max(1));
        let cache = config.cache_dir.as_ref().map(HeegnerCache::new);
        Ok(Pipeline {
            config,
            group,
            ctx,
            degrees: ResidueDegrees::default(),
            factory,
            cache,
            forms: BTreeMap::new(),
            tables: BTreeMap::new(),
            polys: BTreeMap::new(),
            minpoly: None,
            stats: CacheStats::default(),
        })
    }

    /// The configuration.
    pub fn config(&self) -> &VerifyConfig {
        &self.config
    }

    /// The class group of `ℚ(√−23)`.
    pub fn group(&self) -> &ClassGroup {
        &self.group
    }

    /// The numeric context for CM values.
    pub fn context(&self) -> &CMContext {
        &self.ctx
    }

    /// Heegner cache counters so far.
    pub fn cache_stats(&self) -> CacheStats {
        self.stats
    }

    /// Whether `f_m` exists: `m ≥ 1` and `χ₋₂₃(m) ≠ 1`.
    pub fn is_valid(&self, m: i64) -> bool {
        m >= 1 && self.group.discriminant().chi(m) != 1
    }

    /// The admissible indices in `[m_min, m_max]`.
    pub fn valid_ms(&self) -> Vec<i64> {
        (self.config.m_min.max(1)..=self.config.m_max).filter(|&m| self.is_valid(m)).collect()
    }

    /// `f_m` (memoized).
    pub fn form(&mut self, m: i64) -> Result<WHForm, VerifyError> {
        if !self.is_valid(m) {
            return Err(VerifyError::InvalidIndex(m));
        }
        if let Some(f) = self.forms.get(&m) {
            return Ok(f.clone());
        }
        let f = self.factory.plus(m)?;
        self.forms.insert(m, f.clone());
        Ok(f)
    }

    /// The principal part `{d ↦ C(d)}` of the lift of `f_m` (memoized).
    pub fn principal_table(&mut self, m: i64) -> Result<PrincipalPartTable, VerifyError> {
        if let Some(t) = self.tables.get(&m) {
            return Ok(t.clone());
        }
        let t = tensor_principal_part(&self.form(m)?)?;
        self.tables.insert(m, t.clone());
        Ok(t)
    }

    fn fetch(&self, d: i64) -> Result<(HeegnerPolynomial, bool), VerifyError> {
        let r = residue_for(d).ok_or(VerifyError::Perturbation(format!("{d} is not a Heegner discriminant")))?;
        if let Some(p) = self.cache.as_ref().and_then(|c| c.load(d, r, Convention::Single)) {
            return Ok((p, true));
        }
        let p = heegner_polynomial(d, r, Convention::Single, &self.ctx)?;
        if let Some(c) = &self.cache {
            c.store(&p)?;
        }
        Ok((p, false))
    }

    /// Computes (or loads) `P_d` under the single convention for every
    /// listed `d`, in parallel.
    pub fn ensure_polys(&mut self, ds: &BTreeSet<i64>) -> Result<(), VerifyError> {
        let missing: Vec<i64> = ds.iter().copied().filter(|d| !self.polys.contains_key(d)).collect();
        let fetched: Vec<(HeegnerPolynomial, bool)> = missing.par_iter().map(|&d| self.fetch(d)).collect::<Result<_, _>>()?;
        for (p, hit) in fetched {
            if hit {
                self.stats.hits += 1;
            } else {
                self.stats.misses += 1;
            }
            self.polys.insert(p.d, p);
        }
        Ok(())
    }

    /// `P_d` under the single convention, if already computed.
    pub fn poly(&self, d: i64) -> Option<&HeegnerPolynomial> {
        self.polys.get(&d)
    }

    /// The cubic `P_min` with its roots (computed once).
    pub fn minpoly(&mut self) -> Result<&CmMinpoly, VerifyError> {
        if self.minpoly.is_none() {
            self.minpoly = Some(minpoly_cm(&self.ctx)?);
        }
        Ok(self.minpoly.as_ref().expect("just computed"))
    }

    /// Builds forms, principal parts, Heegner polynomials and `P_min` for
    /// the listed indices.
    pub fn prepare(&mut self, ms: &[i64]) -> Result<(), VerifyError> {
        let mut ds = BTreeSet::new();
        for &m in ms {
            ds.extend(self.principal_table(m)?.entries().keys().copied());
        }
        self.ensure_polys(&ds)?;
        self.minpoly()?;
        Ok(())
    }

    /// The form `f_m` with `c(n)` shifted by `delta`.
    pub fn perturbed_form(&mut self, m: i64, n: i64, delta: i64) -> Result<WHForm, VerifyError> {
        let f = self.form(m)?;
        let bump = FracSeries::monomial(Rat::from_integer(delta.into()), Exp::from_integer(n));
        WHForm::new(f.series().add_series(&bump), f.parity(), f.pole_order())
            .map_err(|_| VerifyError::Perturbation(format!("c({n}) lies outside the support of f_{m}")))
    }

    /// The exponents `{d ↦ C(d)}` entering `R_m`, after an optional
    /// perturbation.
    pub fn exponent_map(&mut self, m: i64, perturbation: Option<&Perturbation>) -> Result<BTreeMap<i64, Rat>, VerifyError> {
        let mut map = match perturbation {
            Some(Perturbation::FmCoefficient { n, delta }) => tensor_principal_part(&self.perturbed_form(m, *n, *delta)?)?.as_map(),
            _ => self.principal_table(m)?.as_map(),
        };
        if let Some(Perturbation::PdExponent { d, delta }) = perturbation {
            if residue_for(*d).is_none() {
                return Err(VerifyError::Perturbation(format!("{d} is not a Heegner discriminant")));
            }
            *map.entry(*d).or_insert_with(Rat::zero) += Rat::from_integer((*delta).into());
            map.retain(|_, c| !c.is_zero());
        }
        Ok(map)
    }

    /// The analytic side at `m`, optionally perturbed.
    pub fn analytic(&mut self, m: i64, convention: Convention, perturbation: Option<&Perturbation>) -> Result<AnalyticSide, VerifyError> {
        let map = self.exponent_map(m, perturbation)?;
        self.ensure_polys(&map.keys().copied().collect())?;
        self.minpoly()?;
        self.analytic_from(m, &map, convention)
    }

    /// The analytic side from an explicit exponent map (every `P_d` and
    /// `P_min` must already be prepared).
    pub fn analytic_from(&self, m: i64, map: &BTreeMap<i64, Rat>, convention: Convention) -> Result<AnalyticSide, VerifyError> {
        let minpoly = self.minpoly.as_ref().expect("prepare() computes the minimal polynomial");
        let pmin = &minpoly.poly;
        let h = pmin.degree().unwrap_or(0) as i64;
        let prec = self.ctx.precision;
        let mut factors = Vec::new();
        let mut exponents: BTreeMap<BigUint, Rat> = BTreeMap::new();
        let mut unfactored = Vec::new();
        let mut sums: Vec<BigComplex> = vec![BigComplex::zero(prec); minpoly.roots.len()];
        let mut integral = true;
        let mut negative = false;
        let mut stripped_polys: Vec<(IPoly, i64)> = Vec::new();

        for (&d, c) in map {
            let poly = &self.polys.get(&d).expect("prepare() computes every P_d").poly;
            let exponent = if convention == Convention::Double && PrincipalPartTable::is_self_paired(d) { c * Rat::from_integer(2.into()) } else { c.clone() };
            let (stripped, rest) = poly.strip_factor(pmin);
            let res = pmin.resultant(&rest);
            if res.is_zero() {
                return Err(VerifyError::PoleHit { m, d });
            }
            let fac = factor(res.magnitude());
            if !fac.is_complete() {
                unfactored.extend(fac.unfactored.iter().cloned());
            }
            for (q, e) in &fac.primes {
                *exponents.entry(q.clone()).or_insert_with(Rat::zero) += &exponent * Rat::from_integer((*e as i64).into());
            }
            if let Some(n) = self_intersection_index(d) {
                let weight = &exponent * Rat::from_integer((2 * h).into());
                for q in factor(&BigUint::from(n)).primes.keys() {
                    *exponents.entry(q.clone()).or_insert_with(Rat::zero) -= &weight * Rat::from_integer((valuation(q, n) as i64).into());
                }
            }
            let cr = BigComplex::from_rat(&exponent, prec);
            for (i, x) in minpoly.roots.iter().enumerate() {
                let mut term = BigComplex::from_real(rest.eval_complex(x).ln_abs(), prec);
                if let Some(n) = self_intersection_index(d) {
                    let ln_n = BigComplex::from_i64(n as i64, prec).ln_abs();
                    term = term.sub(&BigComplex::from_real(ln_n, prec).mul(&BigComplex::from_i64(2, prec)));
                }
                sums[i] = sums[i].add(&term.mul(&cr));
            }
            if exponent.is_integer() {
                if res.sign() == Sign::Minus && exponent.to_integer().is_odd() {
                    negative = !negative;
                }
                stripped_polys.push((rest.clone(), exponent.to_integer().to_i64().unwrap_or(0)));
            } else {
                integral = false;
            }
            factors.push(FactorRow { d, exponent, stripped, resultant: res });
        }
        exponents.retain(|_, e| !e.is_zero());

        let twelfth = BigComplex::from_rat(&Rat::new((-1).into(), 12.into()), prec);
        let values: Vec<BigComplex> = sums.iter().map(|s| s.mul(&twelfth)).collect();

        let sign = integral.then_some(if negative { -1 } else { 1 });
        let resultant_oracle = integral.then(|| {
            let r = RFunc::from_factors(stripped_polys.iter().map(|(p, e)| (p, *e)));
            let (mut num, mut den) = (BigInt::one(), BigInt::one());
            for f in &factors {
                let e = f.exponent.to_integer().to_i64().unwrap_or(0);
                if e > 0 {
                    num *= f.resultant.pow(e as u32);
                } else {
                    den *= f.resultant.pow(e.unsigned_abs() as u32);
                }
            }
            pmin.resultant(&r.num) * den == num * pmin.resultant(&r.den)
        });
        Ok(AnalyticSide { m, convention, factors, exponents, unfactored, sign, values, conjugate_pair: minpoly.conjugate_pair, resultant_oracle })
    }

    /// The arithmetic side at `m`.
    pub fn arithmetic(&self, m: i64) -> Result<ArithmeticSide, VerifyError> {
        if !self.is_valid(m) {
            return Err(VerifyError::InvalidIndex(m));
        }
        let idx = Rational64::new(m, LEVEL);
        let diff = diff_set(idx, self.group.discriminant()).map_err(cycles::CycleError::from)?.primes;
        let z = cycle_multiplicities(&self.group, idx, self.group.identity(), Labeling::Direct)?;
        let prime = z.p.filter(|_| diff.len() == 1);
        Ok(ArithmeticSide {
            m,
            diff,
            prime,
            cycle_sum: if prime.is_some() { z.total() } else { Rational64::zero() },
            residue_degree: prime.map(|p| self.degrees.for_prime(p, self.config.discriminant)),
        })
    }

    /// `12·w_k`.
    pub fn constant(&self) -> i64 {
        12 * self.group.units() as i64
    }

    /// The exact identity `e_q = 12·w_k·f_p·ΣZ` for all `q` (zero off the
    /// supporting prime), with complete integral factorization.
    pub fn exact_identity(&self, a: &AnalyticSide, z: &ArithmeticSide) -> bool {
        if !a.unfactored.is_empty() {
            return false;
        }
        let expected = match (z.prime, z.residue_degree) {
            (Some(p), Some(f)) => Some((p, Rat::from_integer((self.constant() * f as i64).into()) * rat64(z.cycle_sum))),
            _ => None,
        };
        let expected_e = |q: &BigUint| match &expected {
            Some((p, e)) if q.to_u64() == Some(*p) => e.clone(),
            _ => Rat::zero(),
        };
        let seen_ok = a.exponents.iter().all(|(q, e)| *e == expected_e(q));
        let prime_ok = expected.as_ref().is_none_or(|(p, e)| a.exponents.get(&BigUint::from(*p)).cloned().unwrap_or_else(Rat::zero) == *e);
        seen_ok && prime_ok
    }

    /// `|Σᵢ vᵢ + w_k·f_p·ΣZ·log p| < 2^{−64}`.
    pub fn numeric_identity(&self, a: &AnalyticSide, z: &ArithmeticSide) -> bool {
        let prec = self.ctx.precision;
        let rhs = match (z.prime, z.residue_degree) {
            (Some(p), Some(f)) => {
                let coeff = rat64(z.cycle_sum) * Rat::from_integer((self.group.units() as i64 * f as i64).into());
                BigComplex::from_real(BigComplex::from_i64(p as i64, prec).ln_abs(), prec).mul(&BigComplex::from_rat(&-coeff, prec))
            }
            _ => BigComplex::zero(prec),
        };
        a.value_sum().log2_dist(&rhs) < -64.0
    }

    /// `|v_a − v_b| < 2^{−prec/2}` for the conjugate roots.
    pub fn conjugate_agreement(&self, a: &AnalyticSide) -> bool {
        let (i, j) = a.conjugate_pair;
        BigComplex::from_real(a.values[i].re().clone(), self.ctx.precision)
            .log2_dist(&BigComplex::from_real(a.values[j].re().clone(), self.ctx.precision))
            < -(self.ctx.precision as f64) / 2.0
    }

    /// Fixes the self-paired convention: the configured one, or the one
    /// satisfying the exact identity at the smallest index whose `R_m`
    /// involves a self-paired divisor (single when nothing decides).
    pub fn resolve_convention(&mut self, ms: &[i64]) -> Result<ConventionResolution, VerifyError> {
        if let Some(c) = self.config.convention.fixed() {
            return Ok(ConventionResolution { chosen: c, fixed: true, decided_at: None, single_holds: None, double_holds: None });
        }
        for &m in ms {
            let table = self.principal_table(m)?;
            if !table.entries().keys().any(|&d| PrincipalPartTable::is_self_paired(d)) {
                continue;
            }
            let z = self.arithmetic(m)?;
            let single = self.analytic(m, Convention::Single, None)?;
            let double = self.analytic(m, Convention::Double, None)?;
            let (s, d) = (self.exact_identity(&single, &z), self.exact_identity(&double, &z));
            let chosen = if !s && d { Convention::Double } else { Convention::Single };
            return Ok(ConventionResolution { chosen, fixed: false, decided_at: Some(m), single_holds: Some(s), double_holds: Some(d) });
        }
        Ok(ConventionResolution { chosen: Convention::Single, fixed: false, decided_at: None, single_holds: None, double_holds: None })
    }

    /// Runs both sides for every admissible index, pins the constants and
    /// assembles the report.
    pub fn verify(&mut self) -> Result<Report, VerifyError> {
        let start = Instant::now();
        let ms = self.valid_ms();
        self.prepare(&ms)?;
        let resolution = self.resolve_convention(&ms)?;
        let conv = resolution.chosen;
        let maps: Vec<(i64, BTreeMap<i64, Rat>)> = ms.iter().map(|&m| Ok((m, self.exponent_map(m, None)?))).collect::<Result<_, VerifyError>>()?;
        let sides: Vec<(AnalyticSide, ArithmeticSide)> = maps
            .par_iter()
            .map(|(m, map)| Ok((self.analytic_from(*m, map, conv)?, self.arithmetic(*m)?)))
            .collect::<Result<_, VerifyError>>()?;

        let pin = |ramified: bool| {
            sides.iter().find_map(|(a, z)| match z.prime {
                Some(p) if (LEVEL as u64 % p == 0) == ramified && !z.cycle_sum.is_zero() => {
                    let e = a.exponents.get(&BigUint::from(p)).cloned().unwrap_or_else(Rat::zero);
                    Some((a.m, e / rat64(z.cycle_sum)))
                }
                _ => None,
            })
        };
        let pinned = Pinned { k_ramified: pin(true), k_inert: pin(false), constant: self.constant(), convention: resolution };

        let records = sides.iter().map(|(a, z)| self.record(a, z, &pinned)).collect();
        let elapsed = start.elapsed();
        Ok(Report { config: self.config.clone(), pinned, records, cache: self.stats, elapsed })
    }

    /// Compares the two sides under pinned constants.
    pub fn record(&self, a: &AnalyticSide, z: &ArithmeticSide, pinned: &Pinned) -> VerificationRecord {
        let integral = a.exponents.values().all(|e| e.is_integer());
        let support = a.unfactored.is_empty()
            && integral
            && match z.prime {
                Some(p) => a.exponents.keys().all(|q| q.to_u64() == Some(p)),
                None => a.exponents.is_empty(),
            };
        let predicted: BTreeMap<u64, Rat> = match z.prime {
            Some(p) => pinned.k_for(p).map(|k| BTreeMap::from([(p, k * rat64(z.cycle_sum))])).unwrap_or_default(),
            None => BTreeMap::new(),
        };
        let exponent = match z.prime {
            Some(p) => {
                let observed = a.exponents.get(&BigUint::from(p)).cloned().unwrap_or_else(Rat::zero);
                predicted.get(&p).is_some_and(|e| *e == observed && e.is_integer())
            }
            None => a.exponents.is_empty(),
        };
        let checks = Checks {
            support,
            exponent,
            degree_identity: self.exact_identity(a, z) && self.numeric_identity(a, z),
            conjugate_agreement: self.conjugate_agreement(a),
        };
        VerificationRecord::new(a, z, predicted, checks)
    }
}

/// `Rational64 → BigRational`.
pub(crate) fn rat64(x: Rational64) -> Rat {
    Rat::new((*x.numer()).into(), (*x.denom()).into())
}

/// Decimal rendering of the real part with `digits` significant digits.
pub fn decimal(x: &BigComplex, digits: usize) -> String {
    real::to_decimal(x.re(), digits)
}
