//! Exact construction of the forms `f_m` by linear solves over a spanning
//! set, and by the `j(23τ)`-ladder for large `m`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use qseries::linalg::{rank, solve_particular, SolveError};
use qseries::{delta_j_expansions, Exp, FracSeries, Rat};

use crate::level::{chi, Level23, LEVEL};
use crate::{Parity, WHForm, WhError};

/// The family of weight-one forms a solve is allowed to combine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanningSet {
    /// `{E·Hᵏ, g·Hᵏ : 0 ≤ k ≤ m + 2}`.
    ///
    /// Since `E = g·(H + 5/3)`, this only spans `g·(polynomials in H)`,
    /// whose members are all holomorphic at the cusp 0 side of the Fricke
    /// involution; it cannot produce most `f_m` and is kept as the first
    /// attempt and as a documented negative result.
    EisensteinTheta,
    /// `{g·Hᵏ : k ≤ m + 1} ∪ {D(H)·Hᵏ/g : k ≤ m − 2}` with `D = q·d/dq`.
    Augmented,
}

fn basis(level: &Level23, set: SpanningSet, p: i64) -> Vec<FracSeries> {
    let p = p as usize;
    match set {
        SpanningSet::EisensteinTheta => (0..=p + 2)
            .flat_map(|k| {
                let hk = level.h_power(k);
                [level.eisenstein().mul_series(hk), level.g().mul_series(hk)]
            })
            .collect(),
        SpanningSet::Augmented => {
            let mut out: Vec<FracSeries> = (0..=p + 1).map(|k| level.g().mul_series(level.h_power(k))).collect();
            out.extend((0..p.saturating_sub(1)).map(|k| level.dh_over_g().mul_series(level.h_power(k))));
            out
        }
    }
}

/// The linear condition imposed on `c(n)`: `Some(v)` forces `c(n) = v`.
fn condition(parity: Parity, m: i64, n: i64) -> Option<Rat> {
    let target = || if n == -m { Rat::one() } else { Rat::zero() };
    match parity {
        // principal part q^{−m}, and c(0) = c(1) = 0
        Parity::Plus if n <= 1 => Some(target()),
        // principal part q^{−m} below q^{−1}; c(−1) and c(0) are forced by
        // the space itself
        Parity::Minus if n <= -2 => Some(target()),
        _ if chi(n) == parity.forbidden() => Some(Rat::zero()),
        _ => None,
    }
}

fn failure(m: i64, parity: Parity, reason: impl Into<String>) -> WhError {
    WhError::SolveFailure { m, parity, reason: reason.into() }
}

/// Checks the defining conditions of `f_m` on a candidate series.
fn certify(series: FracSeries, parity: Parity, m: i64) -> Result<WHForm, WhError> {
    let form = WHForm::new(series, parity, m)?;
    let top = match parity {
        Parity::Plus => 1,
        Parity::Minus => -2,
    };
    if form.trunc() <= top {
        return Err(failure(m, parity, "not enough precision to certify"));
    }
    let lo = form.series().valuation().map_or(0, |v| v.floor().to_integer()).min(-m);
    for n in lo..=top {
        if let Some(v) = condition(parity, m, n) {
            if form.c(n) != v {
                return Err(failure(m, parity, format!("coefficient of q^{n} is {}", form.c(n))));
            }
        }
    }
    Ok(form)
}

/// Solves for `f_m` in `parity` over `set`, using the precomputed series of
/// `level`.  The result is truncated at `level.order()` and certified:
/// principal part, `c(0) = c(1) = 0` (plus space), and the support
/// condition to full truncation.
pub fn build_fm_plus_with(level: &Level23, m: i64, parity: Parity, set: SpanningSet) -> Result<WHForm, WhError> {
    if m < 1 || m > level.max_pole() {
        return Err(WhError::Unsupported(format!("pole order {m} outside 1..={}", level.max_pole())));
    }
    if parity == Parity::Plus && chi(m) == 1 {
        return Err(WhError::Obstructed(m));
    }
    let b = basis(level, set, m);
    let end = b.iter().filter_map(|s| s.trunc()).map(|t| t.ceil().to_integer()).min().expect("truncated basis");
    let lo = b.iter().filter_map(|s| s.valuation()).map(|v| v.floor().to_integer()).min().unwrap_or(0);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for n in lo..end {
        if let Some(v) = condition(parity, m, n) {
            rows.push(b.iter().map(|s| s.coeff_at(n).expect("below basis truncation")).collect::<Vec<_>>());
            rhs.push(v);
        }
    }
    let (x, free) = solve_particular(&rows, &rhs).map_err(|e| match e {
        SolveError::Inconsistent { rank, rank_aug } => {
            failure(m, parity, format!("{set:?} span is inconsistent (rank {rank} < {rank_aug})"))
        }
        other => failure(m, parity, other.to_string()),
    })?;
    if free > 0 {
        // The solution is unique as a series iff every kernel vector of the
        // constraint matrix combines the basis to zero, i.e. iff the
        // constraints have the same rank as the full coefficient matrix.
        let full: Vec<Vec<Rat>> =
            (lo..end).map(|n| b.iter().map(|s| s.coeff_at(n).expect("below basis truncation")).collect()).collect();
        let (rc, rf) = (rank(&rows), rank(&full));
        if rc < rf {
            return Err(failure(m, parity, format!("solution not unique at precision {end} (rank {rc} < {rf})")));
        }
    }
    let f = b.iter().zip(&x).filter(|(_, c)| !c.is_zero()).fold(FracSeries::zero_to(Exp::from_integer(end)), |acc, (s, c)| {
        acc.add_series(&s.scale(c))
    });
    certify(f.truncate(Exp::from_integer(level.order().min(end))), parity, m)
}

/// Tries the Eisenstein–theta span first and falls back to the augmented
/// span on failure.
fn build_either(level: &Level23, m: i64, parity: Parity) -> Result<WHForm, WhError> {
    match build_fm_plus_with(level, m, parity, SpanningSet::EisensteinTheta) {
        Ok(f) => Ok(f),
        Err(WhError::SolveFailure { .. }) => build_fm_plus_with(level, m, parity, SpanningSet::Augmented),
        Err(e) => Err(e),
    }
}

/// The plus-space form `f_m = q^{−m} + O(q²)`, known below `order`.
///
/// Errors with [`WhError::Obstructed`] when `χ(m) = +1`.
pub fn build_fm_plus(m: i64, order: i64) -> Result<WHForm, WhError> {
    if chi(m) == 1 {
        return Err(WhError::Obstructed(m));
    }
    build_either(&Level23::new(order, m), m, Parity::Plus)
}

/// The minus-space forms `f₂ = q⁻² + q⁻¹ − 1 + …`, `f₃`, `f₄` (principal
/// part `q^{−m}` below `q⁻¹`), known below `order`.
pub fn build_fm_minus(m: i64, order: i64) -> Result<WHForm, WhError> {
    if !(2..=4).contains(&m) {
        return Err(WhError::Unsupported(format!("minus forms are built for m ∈ {{2, 3, 4}}, not {m}")));
    }
    build_either(&Level23::new(order, m), m, Parity::Minus)
}

/// `f_m` for `m > 23` through `m = 23a + b`: start from `j(23τ)^a·f_b`,
/// subtract the remaining poles with smaller `f_n`, and clear `c(0)`,
/// `c(1)` with `E` and `g`.
pub fn ladder_fm(m: i64, order: i64) -> Result<WHForm, WhError> {
    if m <= LEVEL {
        return Err(WhError::Unsupported(format!("the ladder starts above 23, got {m}")));
    }
    FormFactory::new(order, m).ladder(m)
}

/// Memoizing builder for all `f_m` up to a bound: direct solves for
/// `m ≤ 23`, the ladder above.
#[derive(Debug)]
pub struct FormFactory {
    order: i64,
    level: Level23,
    j23: FracSeries,
    set: SpanningSet,
    cache: HashMap<(i64, Parity), WHForm>,
}

impl FormFactory {
    /// A factory reporting forms below `order`, for pole orders up to
    /// `max_m`.
    pub fn new(order: i64, max_m: i64) -> Self {
        let a_max = max_m.max(1) / LEVEL;
        let working = order + LEVEL * a_max;
        let level = Level23::new(working, max_m.clamp(4, LEVEL));
        let (_, j) = delta_j_expansions(working / LEVEL + a_max + 3);
        FormFactory { order, level, j23: j.rescale(Exp::from_integer(LEVEL)), set: SpanningSet::EisensteinTheta, cache: HashMap::new() }
    }

    /// The reporting precision.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// The shared level-23 series (at the factory's working precision).
    pub fn level(&self) -> &Level23 {
        &self.level
    }

    /// The span that succeeded most recently.
    pub fn spanning_set(&self) -> SpanningSet {
        self.set
    }

    fn direct(&mut self, m: i64, parity: Parity) -> Result<WHForm, WhError> {
        if let Some(f) = self.cache.get(&(m, parity)) {
            return Ok(f.clone());
        }
        let f = match build_fm_plus_with(&self.level, m, parity, self.set) {
            Err(WhError::SolveFailure { .. }) if self.set == SpanningSet::EisensteinTheta => {
                self.set = SpanningSet::Augmented;
                build_fm_plus_with(&self.level, m, parity, self.set)?
            }
            other => other?,
        };
        self.cache.insert((m, parity), f.clone());
        Ok(f)
    }

    fn plus_full(&mut self, m: i64) -> Result<WHForm, WhError> {
        if chi(m) == 1 {
            return Err(WhError::Obstructed(m));
        }
        if m <= LEVEL {
            self.direct(m, Parity::Plus)
        } else {
            self.ladder_full(m)
        }
    }

    /// `f_m` in the plus space, known below [`order`](Self::order).
    pub fn plus(&mut self, m: i64) -> Result<WHForm, WhError> {
        Ok(self.plus_full(m)?.truncate(self.order))
    }

    /// The minus form `f_m`, `m ∈ {2, 3, 4}`.
    pub fn minus(&mut self, m: i64) -> Result<WHForm, WhError> {
        if !(2..=4).contains(&m) {
            return Err(WhError::Unsupported(format!("minus forms are built for m ∈ {{2, 3, 4}}, not {m}")));
        }
        Ok(self.direct(m, Parity::Minus)?.truncate(self.order))
    }

    /// `f_m` through the ladder (for `m > 23`).
    pub fn ladder(&mut self, m: i64) -> Result<WHForm, WhError> {
        Ok(self.ladder_full(m)?.truncate(self.order))
    }

    fn ladder_full(&mut self, m: i64) -> Result<WHForm, WhError> {
        if let Some(f) = self.cache.get(&(m, Parity::Plus)) {
            return Ok(f.clone());
        }
        if chi(m) == 1 {
            return Err(WhError::Obstructed(m));
        }
        let (mut a, mut b) = (m / LEVEL, m % LEVEL);
        if b == 0 {
            a -= 1;
            b = LEVEL;
        }
        let seed = self.plus_full(b)?;
        let mut f = self.j23.pow(a)?.mul_series(seed.series());
        for n in (1..m).rev() {
            let c = f.coeff_at(-n).ok_or_else(|| failure(m, Parity::Plus, "ladder lost precision"))?;
            if !c.is_zero() {
                let fnn = self.plus_full(n)?;
                f = f.sub_series(&fnn.series().scale(&c));
            }
        }
        for (n, s) in [(0, self.level.eisenstein().clone()), (1, self.level.g().clone())] {
            let c = f.coeff_at(n).ok_or_else(|| failure(m, Parity::Plus, "ladder lost precision"))?;
            if !c.is_zero() {
                f = f.sub_series(&s.scale(&c));
            }
        }
        let form = certify(f, Parity::Plus, m)?;
        if form.trunc() < self.order {
            return Err(failure(m, Parity::Plus, "ladder lost precision"));
        }
        self.cache.insert((m, Parity::Plus), form.clone());
        Ok(form)
    }
}
