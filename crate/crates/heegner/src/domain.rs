//! Moving points of the upper half-plane by `Γ₀(23)*` to make `|q|` small.

use num_integer::Integer;
use qseries::{BigComplex, SeriesError};

use crate::{HeegnerError, LEVEL};

/// Largest `c` tried in the lower-left entry `23c` of `Γ₀(23)` moves.
const MAX_COSET_C: i64 = 4;
/// Relative gain below which a move is not worth applying.
const MIN_GAIN: f64 = 1e-12;
const MAX_STEPS: usize = 200;

/// One step of a reduction word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// `τ ↦ τ + k`.
    Translate(i64),
    /// `τ ↦ −1/(23τ)`.
    Fricke,
    /// `τ ↦ (aτ + b)/(cτ + d)` for `[[a, b], [c, d]] ∈ Γ₀(23)`.
    Gamma0([[i64; 2]; 2]),
}

impl Move {
    /// Applies the move to `tau`.
    pub fn apply(&self, tau: &BigComplex) -> BigComplex {
        let p = tau.precision();
        match *self {
            Move::Translate(k) => tau.add(&BigComplex::from_i64(k, p)),
            Move::Fricke => BigComplex::from_i64(-1, p).div(&tau.mul(&BigComplex::from_i64(LEVEL, p))),
            Move::Gamma0([[a, b], [c, d]]) => {
                let num = tau.mul(&BigComplex::from_i64(a, p)).add(&BigComplex::from_i64(b, p));
                let den = tau.mul(&BigComplex::from_i64(c, p)).add(&BigComplex::from_i64(d, p));
                num.div(&den)
            }
        }
    }
}

/// A reduced point with the word that produced it.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// The moved point.
    pub tau: BigComplex,
    /// The moves, in the order applied.
    pub word: Vec<Move>,
    /// `|e^{2πiτ}|` at the moved point.
    pub q_abs: f64,
}

fn q_abs_of(y: f64) -> f64 {
    (-2.0 * std::f64::consts::PI * y).exp()
}

/// The best single `Fricke` or `Γ₀(23)` move from `(x, y)` (with
/// `|x| ≤ ½`), with the resulting imaginary part.
fn best_move(x: f64, y: f64) -> Option<(Move, f64)> {
    let mut best: Option<(Move, f64)> = None;
    let mut consider = |m: Move, y_new: f64| {
        if y_new > y * (1.0 + MIN_GAIN) && best.map_or(true, |(_, b)| y_new > b) {
            best = Some((m, y_new));
        }
    };
    let abs2 = x * x + y * y;
    consider(Move::Fricke, y / (LEVEL as f64 * abs2));
    for c in 1..=MAX_COSET_C {
        let n = LEVEL * c;
        if (n as f64) * y >= 1.0 {
            break;
        }
        let centre = -(n as f64) * x;
        for d in (centre.floor() as i64 - 1)..=(centre.ceil() as i64 + 1) {
            if d.gcd(&n) != 1 {
                continue;
            }
            let re = n as f64 * x + d as f64;
            let den = re * re + (n as f64 * y).powi(2);
            if den < 1.0 {
                // a·d − b·n = 1
                let e = d.extended_gcd(&n);
                let (a, b) = (e.x * e.gcd, -e.y * e.gcd);
                consider(Move::Gamma0([[a, b], [n, d]]), y / den);
            }
        }
    }
    best
}

/// Greedily maximizes `Im τ` over translations, the Fricke involution and
/// `Γ₀(23)` moves with lower-left entry up to `92`.
pub fn reduce_with_word(tau: &BigComplex) -> Result<Reduction, HeegnerError> {
    if !tau.im_is_positive() {
        return Err(SeriesError::NotInUpperHalfPlane.into());
    }
    let mut t = tau.clone();
    let mut word = Vec::new();
    for _ in 0..MAX_STEPS {
        let (x, _) = t.to_f64();
        let k = -x.round() as i64;
        if k != 0 {
            t = Move::Translate(k).apply(&t);
            word.push(Move::Translate(k));
        }
        let (x, y) = t.to_f64();
        match best_move(x, y) {
            Some((m, _)) => {
                t = m.apply(&t);
                word.push(m);
            }
            None => break,
        }
    }
    let q_abs = q_abs_of(t.to_f64().1);
    Ok(Reduction { tau: t, word, q_abs })
}

/// [`reduce_with_word`], failing with `StuckPoint` if the best point still
/// has `|q| > q_bound`.
pub fn reduce_to_domain(tau: &BigComplex, q_bound: f64) -> Result<Reduction, HeegnerError> {
    let r = reduce_with_word(tau)?;
    if r.q_abs > q_bound {
        return Err(HeegnerError::StuckPoint { q_abs: r.q_abs, bound: q_bound });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qseries::Rat;

    fn pt(x: (i64, i64), y: (i64, i64)) -> BigComplex {
        BigComplex::from_rats(&Rat::new(x.0.into(), x.1.into()), &Rat::new(y.0.into(), y.1.into()), 128)
    }

    #[test]
    fn high_points_are_left_alone() {
        let r = reduce_to_domain(&pt((0, 1), (10, 1)), 0.35).unwrap();
        assert!(r.word.is_empty());
    }

    #[test]
    fn low_points_are_flipped_upwards() {
        let r = reduce_with_word(&pt((1, 100), (1, 100)), ).unwrap();
        assert!(r.word.contains(&Move::Fricke));
        assert!(r.tau.to_f64().1 > 0.01);
    }

    #[test]
    fn gamma0_moves_have_determinant_one() {
        let r = reduce_with_word(&pt((1, 47), (1, 5000))).unwrap();
        for m in r.word {
            if let Move::Gamma0([[a, b], [c, d]]) = m {
                assert_eq!(a * d - b * c, 1);
                assert_eq!(c % 23, 0);
            }
        }
    }
}
