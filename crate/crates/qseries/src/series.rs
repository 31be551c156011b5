//! Truncated Laurent series in fractional powers of `q` over ℚ.
//!
//! A [`FracSeries`] stores the coefficients of
//! `q^{shift} · Σ_k c_k q^{k/denom}` densely, together with the exclusive
//! exponent bound beyond which nothing is known (`trunc`).  Series whose
//! support is finite and fully known (polynomials, constants) are marked
//! exact and carry no truncation.
//!
//! Every operation propagates truncation pessimistically: a coefficient is
//! reported only if it is determined by the known coefficients of the
//! operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::SeriesError;
use crate::{Exp, Rat};

/// Default number of terms past the constant term used when an exact
/// divisor has to be expanded into a power series.
pub const DEFAULT_ORDER: i64 = 200;

/// A truncated (or exact) Laurent series in `q^{1/denom}` with rational
/// coefficients.
///
/// Exponent of `coeffs[i]` is `shift + (start + i)/denom`, where the shift
/// is normalized to `0 ≤ shift < 1/denom`.  All coefficients below the
/// first stored exponent are zero.  For a truncated series every exponent
/// on or off the grid that is below `trunc` is known; for an exact series
/// every exponent is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracSeries {
    denom: i64,
    shift: Exp,
    start: i64,
    coeffs: Vec<Rat>,
    exact: bool,
}

/// Coefficients of a series laid out on an explicit grid.
struct Grid {
    shift: Exp,
    start: i64,
    coeffs: Vec<Rat>,
    /// Exclusive end index; for exact series this is `start + coeffs.len()`.
    end: i64,
    exact: bool,
}

fn floor_div_exp(e: Exp) -> i64 {
    e.floor().to_integer()
}

fn ceil_exp(e: Exp) -> i64 {
    e.ceil().to_integer()
}

fn lcm_i64(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

/// Splits `e` into `(shift, k)` with `e = shift + k/denom` and
/// `0 ≤ shift < 1/denom`.
fn canon(denom: i64, e: Exp) -> (Exp, i64) {
    let k = floor_div_exp(e * Exp::from_integer(denom));
    (e - Exp::new(k, denom), k)
}

fn rat_from_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn exp_to_rat(e: Exp) -> Rat {
    Rat::new(BigInt::from(*e.numer()), BigInt::from(*e.denom()))
}

/// Least common multiple of the denominators of a coefficient slice.
fn common_denominator(coeffs: &[Rat]) -> BigInt {
    coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Truncated convolution of integer vectors: `out[n] = Σ a[i]·b[n-i]` for
/// `n < out_len`.
fn convolve(a: &[BigInt], b: &[BigInt], out_len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); out_len];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() || i >= out_len {
            continue;
        }
        let lim = (out_len - i).min(b.len());
        for (j, bj) in b[..lim].iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

impl FracSeries {
    /// The exact zero series.
    pub fn zero() -> Self {
        FracSeries { denom: 1, shift: Exp::zero(), start: 0, coeffs: Vec::new(), exact: true }
    }

    /// The series `O(q^{order})`: zero below `order`, unknown from there on.
    pub fn zero_to(order: Exp) -> Self {
        let (shift, k) = canon(1, order);
        FracSeries { denom: 1, shift, start: k, coeffs: Vec::new(), exact: false }
    }

    /// The exact constant series `c`.
    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, Exp::zero())
    }

    /// The exact series `1`.
    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The exact monomial `c·q^e`.
    pub fn monomial(c: Rat, e: Exp) -> Self {
        Self::from_dense(*e.denom(), e, vec![c], None)
    }

    /// Builds a series from dense coefficients: `coeffs[i]` sits at exponent
    /// `first + i/denom`.  With `trunc = None` the series is exact; otherwise
    /// coefficients at exponents `≥ trunc` are unknown (and any supplied
    /// coefficients there are discarded).
    pub fn from_dense(denom: i64, first: Exp, coeffs: Vec<Rat>, trunc: Option<Exp>) -> Self {
        assert!(denom > 0, "series denominator must be positive");
        let (shift, start) = canon(denom, first);
        let mut s = FracSeries { denom, shift, start, coeffs, exact: true };
        if let Some(t) = trunc {
            s = s.truncate(t);
        } else {
            s.normalize();
        }
        s
    }

    /// Integer-coefficient convenience constructor: `coeffs[i]` at exponent
    /// `first + i`, known up to (excluding) `first + coeffs.len()` unless
    /// `exact`.
    pub fn from_ints(first: i64, coeffs: &[i64], exact: bool) -> Self {
        let n = coeffs.len() as i64;
        let trunc = if exact { None } else { Some(Exp::from_integer(first + n)) };
        Self::from_dense(1, Exp::from_integer(first), coeffs.iter().map(|&c| rat_from_int(c)).collect(), trunc)
    }

    /// Builds a series from sparse `(exponent, coefficient)` terms.
    pub fn from_terms<I>(terms: I, trunc: Option<Exp>) -> Self
    where
        I: IntoIterator<Item = (Exp, Rat)>,
    {
        let terms: Vec<(Exp, Rat)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let mut denom = trunc.map(|t| *t.denom()).unwrap_or(1);
        for (e, _) in &terms {
            denom = lcm_i64(denom, *e.denom());
        }
        let lo = terms.iter().map(|(e, _)| *e).min();
        let Some(lo) = lo else {
            return match trunc {
                Some(t) => Self::zero_to(t),
                None => Self::zero(),
            };
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap_or(lo);
        let len = ((hi - lo) * Exp::from_integer(denom)).to_integer() as usize + 1;
        let mut coeffs = vec![Rat::zero(); len];
        for (e, c) in terms {
            let idx = ((e - lo) * Exp::from_integer(denom)).to_integer() as usize;
            coeffs[idx] += c;
        }
        Self::from_dense(denom, lo, coeffs, trunc)
    }

    /// Exponent grid denominator (exponents lie in `shift + (1/denom)ℤ`).
    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Denominator of the smallest grid `(1/n)ℤ` containing every exponent.
    pub fn exponent_denominator(&self) -> i64 {
        lcm_i64(self.denom, *self.shift.denom())
    }

    /// Whether the series is exact (finite, fully known support).
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Exclusive truncation exponent, `None` for exact series.
    pub fn trunc(&self) -> Option<Exp> {
        if self.exact {
            None
        } else {
            Some(self.exponent_at(self.end()))
        }
    }

    fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    fn exponent_at(&self, idx: i64) -> Exp {
        self.shift + Exp::new(idx, self.denom)
    }

    /// Lowest exponent with a nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<Exp> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.exponent_at(self.start + i as i64))
    }

    /// Coefficient at exponent `e`; `None` if `e` is at or beyond the
    /// truncation.
    pub fn coeff(&self, e: Exp) -> Option<Rat> {
        if let Some(t) = self.trunc() {
            if e >= t {
                return None;
            }
        }
        let pos = (e - self.shift) * Exp::from_integer(self.denom);
        if !pos.is_integer() {
            return Some(Rat::zero());
        }
        let idx = pos.to_integer() - self.start;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            return Some(Rat::zero());
        }
        Some(self.coeffs[idx as usize].clone())
    }

    /// Coefficient at the integer exponent `n` (see [`coeff`](Self::coeff)).
    pub fn coeff_at(&self, n: i64) -> Option<Rat> {
        self.coeff(Exp::from_integer(n))
    }

    /// Integer coefficient at exponent `n`; `None` if unknown or not integral.
    pub fn int_coeff_at(&self, n: i64) -> Option<BigInt> {
        self.coeff_at(n).filter(|c| c.is_integer()).map(|c| c.to_integer())
    }

    /// Iterator over the nonzero known terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exp, &Rat)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.exponent_at(self.start + i as i64), c))
    }

    /// True if every known coefficient is zero.
    pub fn is_zero_to_trunc(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True if every known coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Restricts to exponents `< order`; the result is truncated there (or
    /// earlier, if the series was already less precise).
    pub fn truncate(&self, order: Exp) -> Self {
        if let Some(t) = self.trunc() {
            if order >= t {
                return self.clone();
            }
        }
        let denom = lcm_i64(self.denom, *(order - self.shift).denom());
        let g = self.on_grid(denom);
        let end_idx = ((order - g.shift) * Exp::from_integer(denom)).to_integer();
        let mut coeffs = g.coeffs;
        let keep = (end_idx - g.start).max(0) as usize;
        coeffs.truncate(keep);
        let start = if end_idx < g.start { end_idx } else { g.start };
        let mut s = FracSeries { denom, shift: g.shift, start, coeffs, exact: false };
        // pad with known zeros up to the new truncation
        let want = (end_idx - s.start) as usize;
        s.coeffs.resize(want, Rat::zero());
        s.normalize();
        s
    }

    /// Lays the series out on the finer grid `(1/denom)ℤ + shift'`.
    fn on_grid(&self, denom: i64) -> Grid {
        assert!(denom % self.denom == 0, "target grid must refine the series grid");
        let f = denom / self.denom;
        let (shift, k0) = canon(denom, self.shift);
        if f == 1 {
            return Grid { shift, start: self.start + k0, coeffs: self.coeffs.clone(), end: self.end() + k0, exact: self.exact };
        }
        let start = self.start * f + k0;
        let len = if self.coeffs.is_empty() {
            0
        } else if self.exact {
            (self.coeffs.len() as i64 - 1) * f + 1
        } else {
            self.coeffs.len() as i64 * f
        };
        let mut coeffs = vec![Rat::zero(); len as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * f as usize] = c.clone();
        }
        let end = if self.exact { start + len } else { self.end() * f + k0 };
        Grid { shift, start, coeffs, end, exact: self.exact }
    }

    /// Restores the canonical representation (trimmed, reduced grid).
    fn normalize(&mut self) {
        // canonical shift
        if self.shift < Exp::zero() || self.shift >= Exp::new(1, self.denom) {
            let (s, k) = canon(self.denom, self.shift);
            self.shift = s;
            self.start += k;
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        let Some(lead) = lead else {
            if self.exact {
                *self = Self::zero();
            } else {
                let t = self.exponent_at(self.end());
                let (shift, k) = canon(1, t);
                *self = FracSeries { denom: 1, shift, start: k, coeffs: Vec::new(), exact: false };
            }
            return;
        };
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
        if self.exact {
            while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                self.coeffs.pop();
            }
        }
        // reduce the grid
        let mut g = 0i64;
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            if !c.is_zero() {
                g = g.gcd(&(i as i64));
                if g == 1 {
                    break;
                }
            }
        }
        let g = if g == 0 { self.denom } else { g.gcd(&self.denom) };
        if g > 1 {
            let end_exp = self.exponent_at(self.end());
            let first = self.exponent_at(self.start);
            let nd = self.denom / g;
            let (shift, start) = canon(nd, first);
            let mut coeffs: Vec<Rat> = self.coeffs.iter().step_by(g as usize).cloned().collect();
            if !self.exact {
                let end_idx = ceil_exp((end_exp - shift) * Exp::from_integer(nd));
                coeffs.resize((end_idx - start) as usize, Rat::zero());
            } else {
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
            }
            self.denom = nd;
            self.shift = shift;
            self.start = start;
            self.coeffs = coeffs;
        }
    }

    /// Returns the common grid `(denom, shift)` for adding `self` and `other`.
    fn common_grid(&self, other: &Self) -> i64 {
        let d = lcm_i64(self.denom, other.denom);
        let delta = self.shift - other.shift;
        lcm_i64(d, *delta.denom())
    }

    /// Exact sum (truncated at the lesser truncation).
    pub fn add_series(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    /// Exact difference (truncated at the lesser truncation).
    pub fn sub_series(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        let d = self.common_grid(other);
        let a = self.on_grid(d);
        let b = other.on_grid(d);
        debug_assert_eq!(a.shift, b.shift);
        let end = match (a.exact, b.exact) {
            (true, true) => a.end.max(b.end),
            (true, false) => b.end,
            (false, true) => a.end,
            (false, false) => a.end.min(b.end),
        };
        let start = a.start.min(b.start).min(end);
        let len = (end - start).max(0) as usize;
        let zero = Rat::zero();
        let get = |g: &Grid, idx: i64| -> Rat {
            let i = idx - g.start;
            if i >= 0 && (i as usize) < g.coeffs.len() {
                g.coeffs[i as usize].clone()
            } else {
                zero.clone()
            }
        };
        let coeffs = (0..len as i64).map(|i| op(&get(&a, start + i), &get(&b, start + i))).collect();
        let mut s = FracSeries { denom: d, shift: a.shift, start, coeffs, exact: a.exact && b.exact };
        s.normalize();
        s
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, c: &Rat) -> Self {
        let mut s = self.clone();
        for x in s.coeffs.iter_mut() {
            *x *= c;
        }
        s.normalize();
        s
    }

    /// Exact product, truncated where the operands stop determining it.
    pub fn mul_series(&self, other: &Self) -> Self {
        let d = lcm_i64(self.denom, other.denom);
        let a = self.on_grid(d);
        let b = other.on_grid(d);
        let start = a.start + b.start;
        let a_empty = a.coeffs.iter().all(|c| c.is_zero());
        let b_empty = b.coeffs.iter().all(|c| c.is_zero());
        let (end, exact) = match (a.exact, b.exact) {
            (true, true) => {
                if a_empty || b_empty {
                    return Self::zero();
                }
                (start + a.coeffs.len() as i64 + b.coeffs.len() as i64 - 1, true)
            }
            (true, false) => {
                if a_empty {
                    return Self::zero();
                }
                (a.start + b.end, false)
            }
            (false, true) => {
                if b_empty {
                    return Self::zero();
                }
                (a.end + b.start, false)
            }
            (false, false) => ((a.start + b.end).min(a.end + b.start), false),
        };
        let out_len = (end - start).max(0) as usize;
        let la = common_denominator(&a.coeffs);
        let lb = common_denominator(&b.coeffs);
        let ai: Vec<BigInt> = a.coeffs.iter().map(|c| (c * &la).to_integer()).collect();
        let bi: Vec<BigInt> = b.coeffs.iter().map(|c| (c * &lb).to_integer()).collect();
        let prod = convolve(&ai, &bi, out_len);
        let l = la * lb;
        let coeffs = prod.into_iter().map(|x| Rat::new(x, l.clone())).collect();
        let mut s = FracSeries { denom: d, shift: a.shift + b.shift, start, coeffs, exact };
        s.normalize();
        s
    }

    /// Multiplicative inverse.  Exact non-monomial series are first expanded
    /// to [`DEFAULT_ORDER`] terms past their leading term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).ok_or(SeriesError::DivisionByZeroSeries)?;
        if self.exact && self.coeffs.len() == 1 {
            let e = self.exponent_at(self.start);
            return Ok(Self::monomial(self.coeffs[0].recip(), -e));
        }
        let base = if self.exact {
            let v = self.exponent_at(self.start + lead as i64);
            self.truncate(v + Exp::from_integer(DEFAULT_ORDER))
        } else {
            self.clone()
        };
        self.inverse_truncated(&base)
    }

    fn inverse_truncated(&self, base: &Self) -> Result<Self, SeriesError> {
        let lead = base.coeffs.iter().position(|c| !c.is_zero()).ok_or(SeriesError::DivisionByZeroSeries)?;
        let c0 = base.coeffs[lead].clone();
        let tail: Vec<Rat> = base.coeffs[lead..].iter().map(|c| c / &c0).collect();
        let n = tail.len();
        // Rescaling trick: b(Ly) is integral with constant term 1.
        let l = common_denominator(&tail);
        let mut bint = Vec::with_capacity(n);
        let mut lp = BigInt::one();
        for c in &tail {
            bint.push((c * &lp).to_integer());
            lp *= &l;
        }
        let mut e = vec![BigInt::zero(); n];
        if n > 0 {
            e[0] = BigInt::one();
        }
        for k in 1..n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                if !bint[j].is_zero() {
                    acc += &bint[j] * &e[k - j];
                }
            }
            e[k] = -acc;
        }
        let inv_c0 = c0.recip();
        let mut coeffs = Vec::with_capacity(n);
        let mut lp = BigInt::one();
        for ek in e {
            coeffs.push(Rat::new(ek, lp.clone()) * &inv_c0);
            lp *= &l;
        }
        let v = base.exponent_at(base.start + lead as i64);
        let (shift, start) = canon(base.denom, -v);
        let mut s = FracSeries { denom: base.denom, shift, start, coeffs, exact: false };
        s.normalize();
        Ok(s)
    }

    /// Exact quotient `self / other`.
    pub fn div_series(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.exact && other.exact && !other.coeffs.is_empty() && self.coeffs.iter().any(|c| !c.is_zero()) {
            if let Some(q) = self.exact_polynomial_quotient(other) {
                return Ok(q);
            }
        }
        Ok(self.mul_series(&other.inverse()?))
    }

    /// Quotient of two exact series when the division leaves no remainder.
    fn exact_polynomial_quotient(&self, other: &Self) -> Option<Self> {
        let d = lcm_i64(self.denom, other.denom);
        let a = self.on_grid(d);
        let b = other.on_grid(d);
        let mut rem = a.coeffs.clone();
        let bl = b.coeffs.len();
        if rem.len() < bl {
            return None;
        }
        let lead = b.coeffs.last()?.clone();
        let mut q = vec![Rat::zero(); rem.len() - bl + 1];
        for i in (0..q.len()).rev() {
            let c = &rem[i + bl - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
            q[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut s = FracSeries { denom: d, shift: a.shift - b.shift, start: a.start - b.start, coeffs: q, exact: true };
        s.normalize();
        Some(s)
    }

    /// Integer power (negative powers go through [`inverse`](Self::inverse)).
    pub fn pow(&self, n: i64) -> Result<Self, SeriesError> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_series(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_series(&base);
            }
        }
        Ok(result)
    }

    /// The derivative `q·d/dq` (multiplies each coefficient by its exponent).
    pub fn q_derivative(&self) -> Self {
        let mut s = self.clone();
        for (i, c) in s.coeffs.iter_mut().enumerate() {
            *c *= exp_to_rat(self.exponent_at(self.start + i as i64));
        }
        s.normalize();
        s
    }

    /// Substitution `τ ↦ r·τ` (exponent `e ↦ r·e`) for a positive rational `r`.
    pub fn rescale(&self, r: Exp) -> Self {
        assert!(r > Exp::zero(), "rescaling factor must be positive");
        let a = *r.numer();
        let b = *r.denom();
        let nd = self.denom * b;
        let shift = self.shift * r;
        let start = self.start * a;
        let len = if self.coeffs.is_empty() {
            0
        } else if self.exact {
            (self.coeffs.len() as i64 - 1) * a + 1
        } else {
            self.coeffs.len() as i64 * a
        };
        let mut coeffs = vec![Rat::zero(); len as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * a as usize] = c.clone();
        }
        let mut s = FracSeries { denom: nd, shift, start, coeffs, exact: self.exact };
        s.normalize();
        s
    }

    /// Multiplies by `q^e` exactly.
    pub fn shift_by(&self, e: Exp) -> Self {
        self.mul_series(&Self::monomial(Rat::one(), e))
    }

    /// Keeps only the terms whose exponent satisfies `keep` (truncation is
    /// preserved, so the result claims zeros where terms were dropped).
    pub fn filter_terms(&self, keep: impl Fn(Exp) -> bool) -> Self {
        let mut s = self.clone();
        for (i, c) in s.coeffs.iter_mut().enumerate() {
            if !c.is_zero() && !keep(self.exponent_at(self.start + i as i64)) {
                *c = Rat::zero();
            }
        }
        s.normalize();
        s
    }

    /// Applies `f(exponent, coefficient)` to each known coefficient.
    pub fn map_coeffs(&self, f: impl Fn(Exp, &Rat) -> Rat) -> Self {
        let mut s = self.clone();
        for (i, c) in s.coeffs.iter_mut().enumerate() {
            *c = f(self.exponent_at(self.start + i as i64), c);
        }
        s.normalize();
        s
    }

    /// The principal part (terms with negative exponent) as an exact series.
    pub fn principal_part(&self) -> Self {
        Self::from_terms(self.terms().filter(|(e, _)| *e < Exp::zero()).map(|(e, c)| (e, c.clone())), None)
    }

    /// Agreement with `other` on every exponent known to both.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub_series(other).is_zero_to_trunc()
    }

    /// Largest absolute value of a known coefficient (as `f64`, for
    /// diagnostics and tail estimates).
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }

    /// Dense view: `(first exponent, step 1/denom, coefficients)`.
    pub fn dense(&self) -> (Exp, i64, &[Rat]) {
        (self.exponent_at(self.start), self.denom, &self.coeffs)
    }

    /// Serializes to the JSON layout
    /// `{denom, trunc, coeffs: [[num, den, cnum, cden], …]}`.
    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .terms()
            .map(|(e, c)| json!([e.numer(), e.denom(), big_to_json(c.numer()), big_to_json(c.denom())]))
            .collect();
        let trunc = self.trunc().map(|t| json!([t.numer(), t.denom()])).unwrap_or(Value::Null);
        json!({ "denom": self.exponent_denominator(), "trunc": trunc, "coeffs": coeffs })
    }

    /// Parses the JSON layout produced by [`to_json`](Self::to_json).
    pub fn from_json(v: &Value) -> Result<Self, SeriesError> {
        let bad = |m: &str| SeriesError::Malformed(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        let trunc = match obj.get("trunc") {
            None | Some(Value::Null) => None,
            Some(t) => {
                let arr = t.as_array().ok_or_else(|| bad("trunc must be [num, den]"))?;
                if arr.len() != 2 {
                    return Err(bad("trunc must be [num, den]"));
                }
                let n = arr[0].as_i64().ok_or_else(|| bad("trunc numerator"))?;
                let d = arr[1].as_i64().ok_or_else(|| bad("trunc denominator"))?;
                if d <= 0 {
                    return Err(bad("trunc denominator must be positive"));
                }
                Some(Exp::new(n, d))
            }
        };
        let coeffs = obj.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("coeffs must be a list"))?;
        let mut terms = Vec::with_capacity(coeffs.len());
        for entry in coeffs {
            let arr = entry.as_array().filter(|a| a.len() == 4).ok_or_else(|| bad("coefficient entries are [num, den, cnum, cden]"))?;
            let n = arr[0].as_i64().ok_or_else(|| bad("exponent numerator"))?;
            let d = arr[1].as_i64().filter(|&d| d > 0).ok_or_else(|| bad("exponent denominator"))?;
            let cn = big_from_json(&arr[2]).ok_or_else(|| bad("coefficient numerator"))?;
            let cd = big_from_json(&arr[3]).filter(|d| !d.is_zero()).ok_or_else(|| bad("coefficient denominator"))?;
            terms.push((Exp::new(n, d), Rat::new(cn, cd)));
        }
        if let Some(t) = trunc {
            if terms.iter().any(|(e, _)| *e >= t) {
                return Err(bad("coefficient at or beyond truncation"));
            }
        }
        Ok(Self::from_terms(terms, trunc))
    }
}

fn big_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn big_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Serialize for FracSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FracSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        FracSeries::from_json(&v).map_err(D::Error::custom)
    }
}

/// Exact product of two series (see [`FracSeries::mul_series`]).
pub fn series_mul(a: &FracSeries, b: &FracSeries) -> FracSeries {
    a.mul_series(b)
}

/// Exact quotient of two series (see [`FracSeries::div_series`]).
pub fn series_div(a: &FracSeries, b: &FracSeries) -> Result<FracSeries, SeriesError> {
    a.div_series(b)
}

impl Add for &FracSeries {
    type Output = FracSeries;
    fn add(self, rhs: &FracSeries) -> FracSeries {
        self.add_series(rhs)
    }
}

impl Add for FracSeries {
    type Output = FracSeries;
    fn add(self, rhs: FracSeries) -> FracSeries {
        self.add_series(&rhs)
    }
}

impl Zero for FracSeries {
    fn zero() -> Self {
        FracSeries::zero()
    }

    fn is_zero(&self) -> bool {
        self.exact && self.coeffs.is_empty()
    }
}

impl Sub for &FracSeries {
    type Output = FracSeries;
    fn sub(self, rhs: &FracSeries) -> FracSeries {
        self.sub_series(rhs)
    }
}

impl Sub for FracSeries {
    type Output = FracSeries;
    fn sub(self, rhs: FracSeries) -> FracSeries {
        self.sub_series(&rhs)
    }
}

impl Mul for &FracSeries {
    type Output = FracSeries;
    fn mul(self, rhs: &FracSeries) -> FracSeries {
        self.mul_series(rhs)
    }
}

impl Mul for FracSeries {
    type Output = FracSeries;
    fn mul(self, rhs: FracSeries) -> FracSeries {
        self.mul_series(&rhs)
    }
}

impl Neg for &FracSeries {
    type Output = FracSeries;
    fn neg(self) -> FracSeries {
        self.scale(&-Rat::one())
    }
}

impl Neg for FracSeries {
    type Output = FracSeries;
    fn neg(self) -> FracSeries {
        (&self).neg()
    }
}

impl fmt::Display for FracSeries {
    /// Human-readable rendering, at most 12 terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms().take(12) {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = a.is_one();
            if e.is_zero() {
                write!(f, "{a}")?;
                continue;
            }
            if !unit {
                write!(f, "{a}")?;
            }
            if e.is_one() {
                write!(f, "q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(t) = self.trunc() {
            write!(f, " + O(q^{t})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        rat_from_int(n)
    }

    fn e(n: i64, d: i64) -> Exp {
        Exp::new(n, d)
    }

    #[test]
    fn multiplicative_identity() {
        let a = FracSeries::from_ints(0, &[1, 1], true);
        assert_eq!(&a * &FracSeries::one(), a);
    }

    #[test]
    fn half_powers_add() {
        let h = FracSeries::monomial(r(1), e(1, 2));
        let p = &h * &h;
        assert_eq!(p, FracSeries::monomial(r(1), e(1, 1)));
        assert_eq!(p.denom(), 1);
    }

    #[test]
    fn truncation_of_products() {
        // (1 + q + O(q^3)) * (q^-1 + 2 + O(q^2)) known up to q^1
        let a = FracSeries::from_ints(0, &[1, 1, 0], false);
        let b = FracSeries::from_ints(-1, &[1, 2, 0], false);
        let p = &a * &b;
        assert_eq!(p.trunc(), Some(e(2, 1)));
        assert_eq!(p.coeff_at(-1), Some(r(1)));
        assert_eq!(p.coeff_at(0), Some(r(3)));
        assert_eq!(p.coeff_at(1), Some(r(2)));
        assert_eq!(p.coeff_at(2), None);
    }

    #[test]
    fn divide_by_itself() {
        let q = FracSeries::monomial(r(1), e(1, 1));
        assert_eq!(q.div_series(&q).unwrap(), FracSeries::one());
        let a = FracSeries::from_ints(0, &[1, 1], true);
        assert_eq!(a.div_series(&a).unwrap(), FracSeries::one());
    }

    #[test]
    fn geometric_inverse() {
        let a = FracSeries::from_ints(0, &[1, -1, 0, 0, 0, 0], false);
        let inv = a.inverse().unwrap();
        for n in 0..6 {
            assert_eq!(inv.coeff_at(n), Some(r(1)));
        }
        assert_eq!(inv.coeff_at(6), None);
    }

    #[test]
    fn rational_inverse_uses_rescaling() {
        // 1/(1 + q/3) = Σ (-1/3)^n q^n
        let a = FracSeries::from_dense(1, e(0, 1), vec![r(1), Rat::new(1.into(), 3.into())], Some(e(8, 1)));
        let inv = a.inverse().unwrap();
        for n in 0..8u32 {
            let expect = Rat::new(BigInt::from(-1).pow(n), BigInt::from(3).pow(n));
            assert_eq!(inv.coeff_at(n as i64), Some(expect));
        }
    }

    #[test]
    fn division_by_zero_is_reported() {
        let z = FracSeries::zero_to(e(5, 1));
        assert_eq!(FracSeries::one().div_series(&z), Err(SeriesError::DivisionByZeroSeries));
    }

    #[test]
    fn grids_with_different_shifts_add() {
        let a = FracSeries::monomial(r(1), e(1, 24));
        let b = FracSeries::monomial(r(2), e(23, 24));
        let s = &a + &b;
        assert_eq!(s.coeff(e(1, 24)), Some(r(1)));
        assert_eq!(s.coeff(e(23, 24)), Some(r(2)));
        assert_eq!(s.coeff(e(1, 2)), Some(r(0)));
    }

    #[test]
    fn grid_reduction_after_product() {
        // q^{1/24}·(1 - q) times q^{23/24}(1 - q^23) has integral exponents
        let a = FracSeries::from_dense(1, e(1, 24), vec![r(1), r(-1)], None);
        let b = FracSeries::from_dense(23, e(23, 24), vec![r(1)], None);
        let p = &a * &b;
        assert_eq!(p.exponent_denominator(), 1);
        assert_eq!(p.coeff_at(1), Some(r(1)));
        assert_eq!(p.coeff_at(2), Some(r(-1)));
    }

    #[test]
    fn q_derivative_multiplies_by_exponent() {
        let a = FracSeries::from_ints(-1, &[1, 5, 3], true);
        let d = a.q_derivative();
        assert_eq!(d.coeff_at(-1), Some(r(-1)));
        assert_eq!(d.coeff_at(0), Some(r(0)));
        assert_eq!(d.coeff_at(1), Some(r(3)));
    }

    #[test]
    fn rescale_spreads_coefficients() {
        let a = FracSeries::from_ints(0, &[1, 2, 3], false);
        let b = a.rescale(e(23, 1));
        assert_eq!(b.coeff_at(23), Some(r(2)));
        assert_eq!(b.coeff_at(24), Some(r(0)));
        assert_eq!(b.trunc(), Some(e(69, 1)));
        let c = b.rescale(e(1, 23));
        assert_eq!(c, a);
    }

    #[test]
    fn json_round_trip() {
        let a = FracSeries::from_dense(24, e(1, 24), vec![r(1), r(0), Rat::new(BigInt::from(10).pow(30), 7.into())], Some(e(5, 4)));
        let v = a.to_json();
        let b = FracSeries::from_json(&v).unwrap();
        assert_eq!(a, b);
        let s = serde_json::to_string(&a).unwrap();
        let c: FracSeries = serde_json::from_str(&s).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn truncate_pads_known_zeros() {
        let a = FracSeries::from_ints(0, &[1], true);
        let t = a.truncate(e(5, 1));
        assert_eq!(t.coeff_at(4), Some(r(0)));
        assert_eq!(t.coeff_at(5), None);
    }

    #[test]
    fn display_is_readable() {
        let a = FracSeries::from_ints(-1, &[1, 0, 4], false);
        assert_eq!(a.to_string(), "q^-1 + 4q + O(q^2)");
    }
}
