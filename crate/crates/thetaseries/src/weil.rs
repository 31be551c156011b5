//! The Weil representation on the group ring of a finite quadratic module.

use qseries::{BigComplex, Exp, Rat};

use crate::fqm::FiniteQuadModule;

/// Numeric matrices `ρ(S)`, `ρ(T)` of the Weil representation.
///
/// `ρ(T)e_μ = e(Q(μ))e_μ` and
/// `ρ(S)e_μ = e(−sig/8)/√n · Σ_ν e(−(μ, ν)) e_ν`.
#[derive(Clone, Debug)]
pub struct WeilRepMatrices {
    /// The module.
    pub module: FiniteQuadModule,
    /// Signature mod 8 used in the normalization of `ρ(S)`.
    pub sig_mod8: u32,
    /// `ρ(S)` (row `ν`, column `μ`).
    pub s_matrix: Vec<Vec<BigComplex>>,
    /// `ρ(T)` (diagonal).
    pub t_matrix: Vec<Vec<BigComplex>>,
}

/// A square complex matrix.
pub type Matrix = Vec<Vec<BigComplex>>;

fn e_of(x: Exp, prec: usize) -> BigComplex {
    BigComplex::from_rat(&Rat::new((*x.numer()).into(), (*x.denom()).into()), prec).e2pii()
}

/// Builds `ρ(S)` and `ρ(T)` at `precision` bits.
pub fn weil_generators(fqm: &FiniteQuadModule, sig_mod8: u32, precision: usize) -> WeilRepMatrices {
    let n = fqm.order() as usize;
    let p = precision + 16;
    let zero = BigComplex::zero(p);
    let scale = BigComplex::from_real(qseries::bigcomplex::real::sqrt(&qseries::bigcomplex::real::from_rat(&Rat::from_integer((n as i64).into()), p), p), p);
    let lead = e_of(Exp::new(-(sig_mod8 as i64), 8), p).div(&scale);
    let mut s = vec![vec![zero.clone(); n]; n];
    let mut t = vec![vec![zero.clone(); n]; n];
    for mu in 0..n {
        t[mu][mu] = e_of(fqm.q(mu as u64), p);
        for nu in 0..n {
            s[nu][mu] = lead.mul(&e_of(-fqm.bilinear(mu as u64, nu as u64), p));
        }
    }
    WeilRepMatrices { module: fqm.clone(), sig_mod8, s_matrix: s, t_matrix: t }
}

/// Matrix product.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let prec = a[0][0].precision();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigComplex::zero(prec), |acc, k| acc.add(&a[i][k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

/// Conjugate transpose.
pub fn mat_adjoint(a: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

/// `log₂ max_{ij} |a_ij − b_ij|`.
pub fn mat_log2_distance(a: &Matrix, b: &Matrix) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.log2_dist(y)))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// The identity matrix.
pub fn mat_identity(n: usize, prec: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigComplex::one(prec) } else { BigComplex::zero(prec) }).collect()).collect()
}

impl WeilRepMatrices {
    /// The matrix of `e_μ ↦ e(−sig/4) e_{−μ}`, the expected value of `ρ(S)²`.
    pub fn expected_s_squared(&self) -> Matrix {
        let n = self.module.order() as usize;
        let prec = self.s_matrix[0][0].precision();
        let c = e_of(Exp::new(-(self.sig_mod8 as i64), 4), prec);
        let mut m = vec![vec![BigComplex::zero(prec); n]; n];
        for mu in 0..n {
            m[self.module.neg(mu as u64) as usize][mu] = c.clone();
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_on_order_two() {
        let m = FiniteQuadModule::cyclic(2, Exp::new(1, 4)).unwrap();
        let w = weil_generators(&m, m.signature_mod8(), 128);
        assert_eq!(m.signature_mod8(), 1);
        for row in &w.s_matrix {
            for x in row {
                let (re, im) = x.to_f64();
                assert!(((re * re + im * im).sqrt() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
            }
        }
        assert!(w.t_matrix[0][0].log2_dist(&BigComplex::one(128)) < -120.0);
    }
}
