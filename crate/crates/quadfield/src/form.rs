//! Positive definite binary quadratic forms.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// The form `a x² + b xy + c y²` with discriminant `b² − 4ac`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    /// Coefficient of `x²`.
    pub a: i64,
    /// Coefficient of `xy`.
    pub b: i64,
    /// Coefficient of `y²`.
    pub c: i64,
}

impl QuadForm {
    /// The form `[a, b, c]`.
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    /// The principal form of discriminant `d` (`[1, 0, −d/4]` or
    /// `[1, 1, (1−d)/4]`).
    pub fn principal(d: i64) -> Self {
        if d.rem_euclid(4) == 0 {
            QuadForm::new(1, 0, -d / 4)
        } else {
            QuadForm::new(1, 1, (1 - d) / 4)
        }
    }

    /// Discriminant `b² − 4ac`.
    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Value at `(x, y)`.
    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// `gcd(a, b, c)`.
    pub fn content(&self) -> i64 {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    /// True if `gcd(a, b, c) = 1`.
    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// True if `|b| ≤ a ≤ c`, with `b ≥ 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// The form `f(px + qy, rx + sy)` for `γ = [[p, q], [r, s]]`.
    pub fn transform(&self, g: [[i64; 2]; 2]) -> Self {
        let [[p, q], [r, s]] = g;
        let QuadForm { a, b, c } = *self;
        QuadForm {
            a: a * p * p + b * p * r + c * r * r,
            b: 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            c: a * q * q + b * q * s + c * s * s,
        }
    }

    /// Gauss reduction; returns the reduced form and the `SL₂(ℤ)` matrix
    /// `γ` with `self.transform(γ) = reduced`.
    pub fn reduce_with_matrix(&self) -> (Self, [[i64; 2]; 2]) {
        assert!(self.a > 0 && self.disc() < 0, "reduction needs a positive definite form");
        let mut f = *self;
        let mut g = [[1i64, 0], [0, 1]];
        let mul = |g: [[i64; 2]; 2], h: [[i64; 2]; 2]| {
            [
                [g[0][0] * h[0][0] + g[0][1] * h[1][0], g[0][0] * h[0][1] + g[0][1] * h[1][1]],
                [g[1][0] * h[0][0] + g[1][1] * h[1][0], g[1][0] * h[0][1] + g[1][1] * h[1][1]],
            ]
        };
        loop {
            // normalize b into (−a, a]
            if f.b > f.a || f.b <= -f.a {
                let k = (f.a - f.b).div_euclid(2 * f.a);
                let t = [[1, k], [0, 1]];
                f = f.transform(t);
                g = mul(g, t);
            }
            if f.a > f.c {
                let s = [[0, -1], [1, 0]];
                f = f.transform(s);
                g = mul(g, s);
                continue;
            }
            if f.a == f.c && f.b < 0 {
                let s = [[0, -1], [1, 0]];
                f = f.transform(s);
                g = mul(g, s);
            }
            return (f, g);
        }
    }

    /// The reduced form equivalent to `self` under `SL₂(ℤ)`.
    pub fn reduce(&self) -> Self {
        self.reduce_with_matrix().0
    }

    /// `[a, −b, c]`, the inverse class for primitive forms.
    pub fn opposite(&self) -> Self {
        QuadForm::new(self.a, -self.b, self.c).reduce()
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

/// All reduced forms of discriminant `d < 0`, primitive or not when
/// `primitive_only` is false, in increasing `(a, b)` order.
pub fn reduced_forms(d: i64, primitive_only: bool) -> Vec<QuadForm> {
    assert!(d < 0 && matches!(d.rem_euclid(4), 0 | 1), "not a negative discriminant");
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = QuadForm::new(a, b, c);
            if f.is_reduced() && (!primitive_only || f.is_primitive()) {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort_by_key(|f| (f.a, f.b.abs(), -f.b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        assert_eq!(QuadForm::new(1, 1, 6).reduce(), QuadForm::new(1, 1, 6));
        assert_eq!(QuadForm::new(6, 1, 1).reduce(), QuadForm::new(1, 1, 6));
        // [2, −1, 3] is already reduced and represents the inverse of [2, 1, 3]
        assert_eq!(QuadForm::new(2, -1, 3).reduce(), QuadForm::new(2, -1, 3));
        assert_eq!(QuadForm::new(3, 1, 2).reduce(), QuadForm::new(2, -1, 3));
    }

    #[test]
    fn reduction_matrix_is_consistent() {
        for f in [QuadForm::new(23, 23, 6), QuadForm::new(46, 19, 2), QuadForm::new(92, 61, 11), QuadForm::new(7, 13, 7)] {
            let (r, g) = f.reduce_with_matrix();
            assert_eq!(f.transform(g), r);
            assert_eq!(g[0][0] * g[1][1] - g[0][1] * g[1][0], 1);
            assert!(r.is_reduced());
            assert_eq!(r.disc(), f.disc());
        }
    }

    #[test]
    fn class_numbers_by_enumeration() {
        assert_eq!(reduced_forms(-23, true).len(), 3);
        assert_eq!(reduced_forms(-7, true).len(), 1);
        assert_eq!(reduced_forms(-47, true).len(), 5);
        assert_eq!(reduced_forms(-15, true).len(), 2);
        // discriminant −92 has the imprimitive forms 2·f for f of discriminant −23
        let all = reduced_forms(-92, false);
        for f in reduced_forms(-23, true) {
            assert!(all.contains(&QuadForm::new(2 * f.a, 2 * f.b, 2 * f.c)));
        }
        assert_eq!(reduced_forms(-92, true).len(), 3);
        assert_eq!(all.len(), 6);
    }

    proptest::proptest! {
        #[test]
        fn random_transforms_reduce_back(p in -6i64..6, q in -6i64..6, k in 0usize..3) {
            let g0 = reduced_forms(-23 * 5, true);
            let f = g0[k % g0.len()];
            // γ = [[1, q], [p, 1 + pq]] has determinant 1
            let h = f.transform([[1, q], [p, 1 + p * q]]);
            proptest::prop_assert_eq!(h.disc(), f.disc());
            proptest::prop_assert_eq!(h.reduce(), f);
        }
    }
}
