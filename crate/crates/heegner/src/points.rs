//! Heegner points of discriminant `−d` on `X₀(23)` as forms `[A, B, C]`
//! with `23 | A` and a fixed residue `B mod 46`.

use num_integer::Integer;
use qseries::bigcomplex::real;
use qseries::{BigComplex, Rat};
use quadfield::{reduced_forms, QuadForm};

use crate::{HeegnerError, LEVEL};

const MODULUS: i64 = 2 * LEVEL;
const INITIAL_BOUND: i64 = 16;
const BOUND_CAP: i64 = 1024;

/// True if `−d` is a square mod `92`, i.e. `Z(d/92)` is non-empty.
pub fn is_heegner_discriminant(d: i64) -> bool {
    d > 0 && !heegner_residues(d).is_empty()
}

/// The residues `r mod 46` with `r² ≡ −d mod 92`, in increasing order.
pub fn heegner_residues(d: i64) -> Vec<i64> {
    (0..MODULUS).filter(|r| (r * r + d).rem_euclid(4 * LEVEL) == 0).collect()
}

/// A CM point `τ = (−B + i√d)/(2A)` given by a positive definite form
/// `[A, B, C]` of discriminant `−d` with `23 | A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeegnerPoint {
    /// The form; `form.a` is a positive multiple of 23.
    pub form: QuadForm,
    /// The residue `B mod 46`.
    pub residue: i64,
}

impl HeegnerPoint {
    /// Validates `23 | A`, `A > 0` and `B² − 4AC < 0`.
    pub fn new(form: QuadForm) -> Option<Self> {
        (form.a > 0 && form.a % LEVEL == 0 && form.disc() < 0)
            .then(|| HeegnerPoint { form, residue: form.b.rem_euclid(MODULUS) })
    }

    /// The discriminant `B² − 4AC = −d`.
    pub fn disc(&self) -> i64 {
        self.form.disc()
    }

    /// `τ = (−B + i√d)/(2A)` at `prec` bits.
    pub fn tau(&self, prec: usize) -> BigComplex {
        let w = prec + 16;
        let re = Rat::new((-self.form.b).into(), (2 * self.form.a).into());
        let sqrt_d = real::sqrt(&real::from_bigint(&(-self.disc()).into(), w), w);
        let i_sqrt_d = BigComplex::new(real::from_f64(0.0, w), sqrt_d, w);
        let im = i_sqrt_d.div(&BigComplex::from_i64(2 * self.form.a, w));
        BigComplex::from_rat(&re, w).add(&im).with_precision(prec)
    }

    /// `Im τ = √d/(2A)` as a float.
    pub fn im_f64(&self) -> f64 {
        ((-self.disc()) as f64).sqrt() / (2 * self.form.a) as f64
    }

    /// The point `−τ̄`, given by `[A, −B, C]` (residue `−r`).
    pub fn conjugate(&self) -> Self {
        let f = QuadForm::new(self.form.a, -self.form.b, self.form.c);
        HeegnerPoint { form: normalize_b(f), residue: (-self.form.b).rem_euclid(MODULUS) }
    }
}

/// Translates `B` into `(−A, A]` (keeps `B mod 46` since `46 | 2A`).
fn normalize_b(f: QuadForm) -> QuadForm {
    let k = (f.a - f.b).div_euclid(2 * f.a);
    f.transform([[1, k], [0, 1]])
}

/// The points of `Z(d/92, r) + Z(d/92, −r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegnerDivisor {
    /// The discriminant magnitude `d`.
    pub d: i64,
    /// `{r, −r} mod 46` (one element when `r ≡ −r`).
    pub residues: Vec<i64>,
    /// One point per `Γ₀(23)`-class, grouped by residue in the order of
    /// `residues`.
    pub points: Vec<HeegnerPoint>,
}

impl HeegnerDivisor {
    /// True if `r ≡ −r mod 46` (`r ∈ {0, 23}`).
    pub fn is_self_paired(&self) -> bool {
        self.residues.len() == 1
    }

    /// The points with residue `r`.
    pub fn points_with_residue(&self, r: i64) -> impl Iterator<Item = &HeegnerPoint> + '_ {
        let r = r.rem_euclid(MODULUS);
        self.points.iter().filter(move |p| p.residue == r)
    }
}

/// A form `SL₂(ℤ)`-equivalent to `f` with `23 | A`, `B ≡ r mod 46`, minimal
/// `A` among the unimodular transforms with entries up to `bound`.
fn transport(f: QuadForm, r: i64, bound: i64) -> Option<QuadForm> {
    let mut best: Option<QuadForm> = None;
    for p in -bound..=bound {
        for s in 0..=bound {
            if (s == 0 && p <= 0) || p.gcd(&s) != 1 {
                continue;
            }
            let a = f.eval(p, s);
            if a % LEVEL != 0 || best.is_some_and(|b| b.a <= a) {
                continue;
            }
            // complete (p, s) to [[p, q], [s, t]] with pt − qs = 1
            let e = p.extended_gcd(&s);
            let (t, q) = (e.x * e.gcd, -e.y * e.gcd);
            let g = f.transform([[p, q], [s, t]]);
            if (g.b - r).rem_euclid(MODULUS) == 0 {
                best = Some(normalize_b(g));
            }
        }
    }
    best
}

/// One representative per `Γ₀(23)`-class of the Heegner points of
/// discriminant `−d` with residues `±r mod 46`.
///
/// Every `SL₂(ℤ)`-reduced form of discriminant `−d` (primitive or not) is
/// transported to a form `[A, B, C]` with `23 | A` and `B ≡ ±r mod 46`; the
/// search bound doubles from 16 up to 1024.  The result is checked against
/// the class count per residue.
pub fn enumerate_points(d: i64, r: i64) -> Result<HeegnerDivisor, HeegnerError> {
    let r = r.rem_euclid(MODULUS);
    if d <= 0 || (r * r + d).rem_euclid(4 * LEVEL) != 0 {
        return Err(HeegnerError::NotHeegner { d, r });
    }
    let forms = reduced_forms(-d, false);
    let mut residues = vec![r, (-r).rem_euclid(MODULUS)];
    residues.dedup();
    let mut points = Vec::new();
    for &res in &residues {
        let mut found = std::collections::BTreeSet::new();
        for f in &forms {
            let mut bound = INITIAL_BOUND;
            let g = loop {
                if let Some(g) = transport(*f, res, bound) {
                    break g;
                }
                if bound >= BOUND_CAP {
                    return Err(HeegnerError::TransportFailure { form: f.to_string(), r: res, bound });
                }
                bound *= 2;
            };
            debug_assert_eq!(g.reduce(), *f);
            found.insert(HeegnerPoint::new(g).expect("transported form has 23 | A"));
        }
        if found.len() != forms.len() {
            return Err(HeegnerError::CountMismatch { d, found: found.len(), expected: forms.len() });
        }
        points.extend(found);
    }
    Ok(HeegnerDivisor { d, residues, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_of_small_discriminants() {
        assert_eq!(heegner_residues(7), vec![19, 27]);
        assert_eq!(heegner_residues(23), vec![23]);
        assert_eq!(heegner_residues(92), vec![0]);
        assert!(heegner_residues(5).is_empty());
    }

    #[test]
    fn transported_forms_keep_their_class() {
        let r = heegner_residues(15)[0];
        for f in reduced_forms(-15, false) {
            let g = transport(f, r, 16).unwrap();
            assert_eq!(g.reduce(), f);
            assert_eq!(g.a % 23, 0);
            assert_eq!((g.b - r).rem_euclid(46), 0);
        }
    }

    #[test]
    fn conjugate_flips_the_residue() {
        let p = HeegnerPoint::new(QuadForm::new(23, 19, 4)).unwrap();
        let c = p.conjugate();
        assert_eq!(c.residue, 27);
        assert_eq!(c.form.disc(), p.form.disc());
    }
}
