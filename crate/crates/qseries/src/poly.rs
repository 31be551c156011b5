//! Integer polynomials, exact resultants and rational functions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bigcomplex::BigComplex;
use crate::Rat;

/// A polynomial with arbitrary-precision integer coefficients, stored from
/// the constant term upwards.  The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IPoly {
    coeffs: Vec<BigInt>,
}

impl From<IPoly> for Vec<String> {
    fn from(p: IPoly) -> Self {
        p.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for IPoly {
    type Error = String;
    fn try_from(v: Vec<String>) -> Result<Self, String> {
        let coeffs = v.iter().map(|s| s.parse::<BigInt>().map_err(|e| format!("bad coefficient {s:?}: {e}"))).collect::<Result<Vec<_>, _>>()?;
        Ok(IPoly::new(coeffs))
    }
}

impl IPoly {
    /// Builds a polynomial from coefficients `c₀, c₁, …` (trailing zeros
    /// removed).
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IPoly { coeffs }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        IPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The polynomial `x − a`.
    pub fn linear_root(a: BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    /// Coefficients from the constant term upwards.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// True if the leading coefficient is 1.
    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        Self::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z)).collect())
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        Self::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z)).collect())
    }

    /// Product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Non-negative power.
    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Exact quotient `self / other` over ℤ, if `other` divides `self`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.divrem_rational(other);
        if !r.iter().all(|c| c.is_zero()) || !q.iter().all(|c| c.is_integer()) {
            return None;
        }
        Some(Self::new(q.into_iter().map(|c| c.to_integer()).collect()))
    }

    /// Division with remainder over ℚ: returns `(quotient, remainder)`
    /// coefficient vectors.
    fn divrem_rational(&self, other: &Self) -> (Vec<Rat>, Vec<Rat>) {
        assert!(!other.is_zero(), "division by the zero polynomial");
        let mut rem: Vec<Rat> = self.coeffs.iter().cloned().map(Rat::from_integer).collect();
        let dl = other.coeffs.len();
        if rem.len() < dl {
            return (Vec::new(), rem);
        }
        let lead = Rat::from_integer(other.leading());
        let mut q = vec![Rat::zero(); rem.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dl - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[i + j] -= &c * Rat::from_integer(b.clone());
            }
            q[i] = c;
        }
        rem.truncate(dl - 1);
        (q, rem)
    }

    /// Multiplicity of `factor` as a divisor of `self` and the cofactor.
    pub fn strip_factor(&self, factor: &Self) -> (u32, Self) {
        let mut k = 0;
        let mut cur = self.clone();
        if factor.degree().unwrap_or(0) == 0 {
            return (0, cur);
        }
        while let Some(q) = cur.exact_div(factor) {
            cur = q;
            k += 1;
        }
        (k, cur)
    }

    /// Evaluates at an integer.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluates at a complex point (Horner) at the point's precision.
    pub fn eval_complex(&self, x: &BigComplex) -> BigComplex {
        let p = x.precision();
        let mut acc = BigComplex::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&BigComplex::from_bigint(c, p));
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Resultant `Res(self, other)` (see [`poly_resultant`]).
    pub fn resultant(&self, other: &Self) -> BigInt {
        poly_resultant(self, other)
    }
}

/// Exact resultant `Res(p, q) = lc(p)^{deg q} ∏_{p(α)=0} q(α)`.
///
/// Computed by the Euclidean recursion over ℚ,
/// `Res(A, B) = (−1)^{deg A·deg B} lc(B)^{deg A − deg R} Res(B, R)` with
/// `R = A mod B`, which is exact and independent of the Sylvester-matrix
/// determinant used as a test oracle.
pub fn poly_resultant(p: &IPoly, q: &IPoly) -> BigInt {
    assert!(!p.is_zero(), "resultant with the zero polynomial as first argument");
    if q.is_zero() {
        return BigInt::zero();
    }
    let a: Vec<Rat> = p.coeffs.iter().cloned().map(Rat::from_integer).collect();
    let b: Vec<Rat> = q.coeffs.iter().cloned().map(Rat::from_integer).collect();
    let r = resultant_rational(a, b);
    assert!(r.is_integer(), "resultant of integer polynomials must be an integer");
    r.to_integer()
}

fn trim(v: &mut Vec<Rat>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn resultant_rational(mut a: Vec<Rat>, mut b: Vec<Rat>) -> Rat {
    trim(&mut a);
    trim(&mut b);
    let mut acc = Rat::one();
    loop {
        if b.is_empty() {
            return Rat::zero();
        }
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            return acc * pow_rat(&b[0], da);
        }
        if da == 0 {
            return acc * pow_rat(&a[0], db);
        }
        // R = A mod B
        let mut rem = a.clone();
        let lead = b[db].clone();
        if rem.len() >= b.len() {
            for i in (0..=(rem.len() - b.len())).rev() {
                let c = &rem[i + db] / &lead;
                if c.is_zero() {
                    continue;
                }
                for (j, bj) in b.iter().enumerate() {
                    rem[i + j] -= &c * bj;
                }
            }
        }
        rem.truncate(db);
        trim(&mut rem);
        if rem.is_empty() {
            return Rat::zero();
        }
        let dr = rem.len() - 1;
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow_rat(&lead, da - dr);
        a = b;
        b = rem;
    }
}

fn pow_rat(x: &Rat, n: usize) -> Rat {
    let mut r = Rat::one();
    for _ in 0..n {
        r *= x;
    }
    r
}

impl fmt::Display for IPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
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
            if i == 0 || !a.is_one() {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// A rational function `num/den` of integer polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RFunc {
    /// Numerator.
    pub num: IPoly,
    /// Denominator (never the zero polynomial).
    pub den: IPoly,
}

impl RFunc {
    /// Builds `num/den`.
    pub fn new(num: IPoly, den: IPoly) -> Self {
        assert!(!den.is_zero(), "denominator must be nonzero");
        RFunc { num, den }
    }

    /// `∏ P_i^{e_i}` with integer exponents; negative exponents go to the
    /// denominator.
    pub fn from_factors<'a, I>(factors: I) -> Self
    where
        I: IntoIterator<Item = (&'a IPoly, i64)>,
    {
        let mut num = IPoly::one();
        let mut den = IPoly::one();
        for (p, e) in factors {
            if e > 0 {
                num = num.mul(&p.pow(e as u32));
            } else if e < 0 {
                den = den.mul(&p.pow((-e) as u32));
            }
        }
        RFunc { num, den }
    }

    /// Evaluates at a complex point.
    pub fn eval_complex(&self, x: &BigComplex) -> BigComplex {
        self.num.eval_complex(x).div(&self.den.eval_complex(x))
    }

    /// `deg num − deg den`.
    pub fn degree(&self) -> i64 {
        self.num.degree().unwrap_or(0) as i64 - self.den.degree().unwrap_or(0) as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Sylvester-matrix determinant oracle (fraction-free elimination).
    fn sylvester_resultant(p: &IPoly, q: &IPoly) -> BigInt {
        let m = p.degree().unwrap();
        let n = q.degree().unwrap_or(0);
        if n == 0 {
            return q.leading().pow(m as u32);
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for (j, c) in p.coeffs().iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in q.coeffs().iter().rev().enumerate() {
                mat[n + i][i + j] = c.clone();
            }
        }
        crate::linalg::determinant(&mat)
    }

    #[test]
    fn resultant_of_linear_factors() {
        assert_eq!(poly_resultant(&IPoly::from_i64(&[-2, 1]), &IPoly::from_i64(&[-3, 1])), BigInt::from(-1));
    }

    #[test]
    fn resultant_against_sylvester() {
        let p = IPoly::from_i64(&[1, 0, 1]);
        let q = IPoly::from_i64(&[0, 1]);
        assert_eq!(poly_resultant(&p, &q), BigInt::one());
        assert_eq!(sylvester_resultant(&p, &q), BigInt::one());
        let p = IPoly::from_i64(&[7, 11, 6, 1]);
        let q = IPoly::from_i64(&[3, -5, 0, 2, 9]);
        assert_eq!(poly_resultant(&p, &q), sylvester_resultant(&p, &q));
    }

    #[test]
    fn resultant_with_constant() {
        let p = IPoly::from_i64(&[7, 11, 6, 1]);
        assert_eq!(poly_resultant(&p, &IPoly::one()), BigInt::one());
    }

    #[test]
    fn exact_division_and_stripping() {
        let a = IPoly::from_i64(&[2, 1]);
        let b = IPoly::from_i64(&[1, 1, 1]);
        let p = a.mul(&a).mul(&b);
        let (k, rest) = p.strip_factor(&a);
        assert_eq!(k, 2);
        assert_eq!(rest, b);
        assert!(b.exact_div(&a).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(IPoly::from_i64(&[7, 11, 6, 1]).to_string(), "x^3 + 6x^2 + 11x + 7");
        assert_eq!(IPoly::from_i64(&[-1, 0, -2]).to_string(), "-2x^2 - 1");
    }

    proptest::proptest! {
        #[test]
        fn resultant_antisymmetry(p in proptest::collection::vec(-9i64..9, 2..6), q in proptest::collection::vec(-9i64..9, 2..6)) {
            let p = IPoly::from_i64(&p);
            let q = IPoly::from_i64(&q);
            proptest::prop_assume!(!p.is_zero() && !q.is_zero());
            let dp = p.degree().unwrap();
            let dq = q.degree().unwrap();
            let sign = if (dp * dq) % 2 == 1 { -1 } else { 1 };
            proptest::prop_assert_eq!(poly_resultant(&p, &q), poly_resultant(&q, &p) * sign);
            if dp > 0 {
                proptest::prop_assert_eq!(poly_resultant(&p, &q), sylvester_resultant(&p, &q));
            }
        }

        #[test]
        fn resultant_multiplicative(p in proptest::collection::vec(-5i64..5, 2..4), q in proptest::collection::vec(-5i64..5, 1..4), r in proptest::collection::vec(-5i64..5, 1..4)) {
            let p = IPoly::from_i64(&p);
            let q = IPoly::from_i64(&q);
            let r = IPoly::from_i64(&r);
            proptest::prop_assume!(p.degree().unwrap_or(0) > 0 && !q.is_zero() && !r.is_zero());
            proptest::prop_assert_eq!(poly_resultant(&p, &q.mul(&r)), poly_resultant(&p, &q) * poly_resultant(&p, &r));
        }
    }
}
