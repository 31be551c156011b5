//! Arbitrary-precision complex numbers on top of `astro-float`.
//!
//! Every value carries its working precision in bits; binary operations
//! run at the smaller precision of their operands.  Transcendental
//! functions use a per-thread constants cache, so values are freely
//! shareable across threads while computation stays lock-free.

use std::cell::RefCell;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, Word};
use num_bigint::{BigInt, Sign as BigSign};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::Rat;

/// Default evaluation precision in bits.
pub const DEFAULT_PRECISION: usize = 256;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Helpers for real arbitrary-precision values.
pub mod real {
    use super::*;

    /// `π` at precision `p`.
    pub fn pi(p: usize) -> BigFloat {
        with_consts(|cc| cc.pi(p, RM))
    }

    /// Converts an integer exactly (then rounds to `p` bits).
    pub fn from_bigint(n: &BigInt, p: usize) -> BigFloat {
        if n.is_zero() {
            return BigFloat::from_word(0, p);
        }
        let (sign, digits) = n.to_u64_digits();
        let words: Vec<Word> = digits.into_iter().map(|d| d as Word).collect();
        let e = (words.len() * Word::BITS as usize) as i32;
        let s = if sign == BigSign::Minus { Sign::Neg } else { Sign::Pos };
        let mut x = BigFloat::from_words(&words, s, e);
        x.set_precision(p, RM).expect("precision change");
        x
    }

    /// Converts a rational, rounded to `p` bits.
    pub fn from_rat(r: &Rat, p: usize) -> BigFloat {
        let n = from_bigint(r.numer(), p + 64);
        if r.denom() == &BigInt::from(1) {
            let mut n = n;
            n.set_precision(p, RM).expect("precision change");
            return n;
        }
        let d = from_bigint(r.denom(), p + 64);
        n.div(&d, p, RM)
    }

    /// Converts an `f64`.
    pub fn from_f64(x: f64, p: usize) -> BigFloat {
        BigFloat::from_f64(x, p)
    }

    /// Nearest integer (ties to even).
    pub fn round_to_bigint(x: &BigFloat) -> BigInt {
        let r = x.round(0, RM);
        to_bigint_exact(&r)
    }

    /// Converts a value that is already an integer.
    fn to_bigint_exact(x: &BigFloat) -> BigInt {
        if x.is_zero() {
            return BigInt::zero();
        }
        let (m, _n, s, e, _) = x.as_raw_parts().expect("finite value");
        let total_bits = (m.len() * Word::BITS as usize) as i64;
        let mut mag = BigInt::from_slice(
            BigSign::Plus,
            &m.iter().flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32]).collect::<Vec<u32>>(),
        );
        let shift = total_bits - e as i64;
        if shift > 0 {
            mag >>= shift as usize;
        } else {
            mag <<= (-shift) as usize;
        }
        if s == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// Approximate `f64` value (for diagnostics and bounds).
    pub fn to_f64(x: &BigFloat) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        let Some((m, _, s, e, _)) = x.as_raw_parts() else {
            return f64::NAN;
        };
        let top = *m.last().unwrap_or(&0) as f64 / 2f64.powi(Word::BITS as i32);
        let v = top * 2f64.powi(e);
        if s == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Base-2 logarithm of `|x|` (approximate; `-inf` for zero).
    pub fn log2_abs(x: &BigFloat) -> f64 {
        if x.is_zero() {
            return f64::NEG_INFINITY;
        }
        let Some((m, _, _, e, _)) = x.as_raw_parts() else {
            return f64::NAN;
        };
        let top = *m.last().unwrap_or(&1) as f64 / 2f64.powi(Word::BITS as i32);
        top.log2() + e as f64
    }

    /// Natural logarithm of a positive value.
    pub fn ln(x: &BigFloat, p: usize) -> BigFloat {
        with_consts(|cc| x.ln(p, RM, cc))
    }

    /// Exponential.
    pub fn exp(x: &BigFloat, p: usize) -> BigFloat {
        with_consts(|cc| x.exp(p, RM, cc))
    }

    /// Square root of a non-negative value.
    pub fn sqrt(x: &BigFloat, p: usize) -> BigFloat {
        x.sqrt(p, RM)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(x: &BigFloat, digits: usize) -> String {
        let p = ((digits as f64) * 3.33) as usize + 8;
        let mut y = x.clone();
        let _ = y.set_precision(p.max(64), RM);
        with_consts(|cc| y.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
    }

    /// `|x| < 2^{-bits}`.
    pub fn is_below_pow2(x: &BigFloat, bits: i64) -> bool {
        x.is_zero() || log2_abs(x) < -(bits as f64)
    }
}

/// A complex number with arbitrary-precision real and imaginary parts.
#[derive(Clone, Debug)]
pub struct BigComplex {
    re: BigFloat,
    im: BigFloat,
    prec: usize,
}

impl BigComplex {
    /// `re + i·im` at precision `prec` (bits, at least 64).
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        let prec = prec.max(64);
        BigComplex { re, im, prec }
    }

    /// Zero.
    pub fn zero(prec: usize) -> Self {
        Self::new(BigFloat::from_word(0, prec), BigFloat::from_word(0, prec), prec)
    }

    /// One.
    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, prec)
    }

    /// The imaginary unit.
    pub fn i(prec: usize) -> Self {
        Self::new(BigFloat::from_word(0, prec), BigFloat::from_word(1, prec), prec)
    }

    /// An integer.
    pub fn from_i64(n: i64, prec: usize) -> Self {
        Self::new(BigFloat::from_i64(n, prec), BigFloat::from_word(0, prec), prec)
    }

    /// An arbitrary-precision integer.
    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        Self::new(real::from_bigint(n, prec), BigFloat::from_word(0, prec), prec)
    }

    /// A rational.
    pub fn from_rat(r: &Rat, prec: usize) -> Self {
        Self::new(real::from_rat(r, prec), BigFloat::from_word(0, prec), prec)
    }

    /// `a + b·i` with rational parts.
    pub fn from_rats(a: &Rat, b: &Rat, prec: usize) -> Self {
        Self::new(real::from_rat(a, prec), real::from_rat(b, prec), prec)
    }

    /// A real value.
    pub fn from_real(x: BigFloat, prec: usize) -> Self {
        Self::new(x, BigFloat::from_word(0, prec), prec)
    }

    /// Working precision in bits.
    pub fn precision(&self) -> usize {
        self.prec
    }

    /// Real part.
    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    /// Imaginary part.
    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    /// Same value re-rounded to a different precision.
    pub fn with_precision(&self, prec: usize) -> Self {
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        let _ = re.set_precision(prec, RM);
        let _ = im.set_precision(prec, RM);
        Self::new(re, im, prec)
    }

    fn p2(&self, other: &Self) -> usize {
        self.prec.min(other.prec)
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        let p = self.p2(o);
        Self::new(self.re.add(&o.re, p, RM), self.im.add(&o.im, p, RM), p)
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        let p = self.p2(o);
        Self::new(self.re.sub(&o.re, p, RM), self.im.sub(&o.im, p, RM), p)
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p2(o);
        let w = p + 16;
        let re = self.re.mul(&o.re, w, RM).sub(&self.im.mul(&o.im, w, RM), p, RM);
        let im = self.re.mul(&o.im, w, RM).add(&self.im.mul(&o.re, w, RM), p, RM);
        Self::new(re, im, p)
    }

    /// Product with a real value.
    pub fn mul_real(&self, x: &BigFloat) -> Self {
        let p = self.prec;
        Self::new(self.re.mul(x, p, RM), self.im.mul(x, p, RM), p)
    }

    /// Quotient.
    pub fn div(&self, o: &Self) -> Self {
        let p = self.p2(o);
        let w = p + 16;
        let den = o.re.mul(&o.re, w, RM).add(&o.im.mul(&o.im, w, RM), w, RM);
        let re = self.re.mul(&o.re, w, RM).add(&self.im.mul(&o.im, w, RM), w, RM);
        let im = self.im.mul(&o.re, w, RM).sub(&self.re.mul(&o.im, w, RM), w, RM);
        Self::new(re.div(&den, p, RM), im.div(&den, p, RM), p)
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg(), self.prec)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg(), self.prec)
    }

    /// `|z|²`.
    pub fn abs2(&self) -> BigFloat {
        let w = self.prec + 8;
        self.re.mul(&self.re, w, RM).add(&self.im.mul(&self.im, w, RM), self.prec, RM)
    }

    /// `|z|`.
    pub fn abs(&self) -> BigFloat {
        real::sqrt(&self.abs2(), self.prec)
    }

    /// `log|z|` (requires `z ≠ 0`).
    pub fn ln_abs(&self) -> BigFloat {
        let p = self.prec;
        let l = real::ln(&self.abs2(), p + 8);
        l.div(&BigFloat::from_word(2, p), p, RM)
    }

    /// `e^z`.
    pub fn exp(&self) -> Self {
        let p = self.prec;
        let w = p + 16;
        let (r, s, c) = with_consts(|cc| (self.re.exp(w, RM, cc), self.im.sin(w, RM, cc), self.im.cos(w, RM, cc)));
        Self::new(r.mul(&c, p, RM), r.mul(&s, p, RM), p)
    }

    /// `e^{2πiz}`.
    pub fn e2pii(&self) -> Self {
        let p = self.prec;
        let w = p + 16;
        let two_pi = real::pi(w).mul(&BigFloat::from_word(2, w), w, RM);
        // 2πi(x+iy) = −2πy + 2πix
        let arg = Self::new(self.im.mul(&two_pi, w, RM).neg(), self.re.mul(&two_pi, w, RM), w);
        arg.exp().with_precision(p)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: u64) -> Self {
        let mut r = Self::one(self.prec);
        let mut b = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Approximate `(re, im)` as `f64`.
    pub fn to_f64(&self) -> (f64, f64) {
        (real::to_f64(&self.re), real::to_f64(&self.im))
    }

    /// Base-2 logarithm of `|z|` (approximate).
    pub fn log2_abs(&self) -> f64 {
        let a = real::log2_abs(&self.re);
        let b = real::log2_abs(&self.im);
        let m = a.max(b);
        if m == f64::NEG_INFINITY {
            return m;
        }
        m + 0.5 * (1.0 + 2f64.powf(a.min(b) - m) * 2f64.powf(a.min(b) - m)).log2()
    }

    /// True if `|z| < 2^{-bits}`.
    pub fn is_below_pow2(&self, bits: i64) -> bool {
        self.log2_abs() < -(bits as f64)
    }

    /// Real part rounded to the nearest integer, with the distance to it
    /// (as `log2` of the absolute deviation, `-inf` if exact).
    pub fn round_real(&self) -> (BigInt, f64) {
        let n = real::round_to_bigint(&self.re);
        let d = self.re.sub(&real::from_bigint(&n, self.prec + 64), self.prec, RM);
        (n, real::log2_abs(&d))
    }

    /// Imaginary part as a real, sign-aware check for positivity.
    pub fn im_is_positive(&self) -> bool {
        self.im.is_positive() && !self.im.is_zero()
    }

    /// Distance `|self − other|` as base-2 logarithm.
    pub fn log2_dist(&self, other: &Self) -> f64 {
        self.sub(other).log2_abs()
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let im_neg = self.im.is_negative();
        let im_abs = self.im.abs();
        write!(
            f,
            "{} {} {}i",
            real::to_decimal(&self.re, digits),
            if im_neg { "-" } else { "+" },
            real::to_decimal(&im_abs, digits)
        )
    }
}

/// Rounds a rational approximation check helper: `|x − n|` as `f64`.
pub fn abs_f64_of_bigint_diff(a: &BigInt, b: &BigInt) -> f64 {
    (a - b).abs().to_f64().unwrap_or(f64::INFINITY)
}
