//! Exact linear algebra over ℚ by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::Rat;

/// Failure of an exact linear solve.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// The system has no solution.
    #[error("inconsistent linear system (rank {rank}, augmented rank {rank_aug})")]
    Inconsistent {
        /// Rank of the coefficient matrix.
        rank: usize,
        /// Rank of the augmented matrix.
        rank_aug: usize,
    },
    /// The solution is not unique.
    #[error("underdetermined linear system: {free} free parameter(s)")]
    Underdetermined {
        /// Dimension of the solution space of the homogeneous system.
        free: usize,
    },
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Clears denominators of a rational row.
fn integer_row(row: &[Rat]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter().map(|c| (c * &l).to_integer()).collect()
}

/// Solves `A x = b` exactly; the solution must exist and be unique.
///
/// Rows may outnumber columns (overdetermined but consistent systems are
/// the normal use).  Rational entries are scaled to integers row by row and
/// then eliminated fraction-free.
pub fn solve_exact(a: &[Vec<Rat>], b: &[Rat]) -> Result<Vec<Rat>, SolveError> {
    match solve_particular(a, b)? {
        (x, 0) => Ok(x),
        (_, free) => Err(SolveError::Underdetermined { free }),
    }
}

/// Solves a consistent system `A x = b`, setting every free variable to
/// zero.  Returns the solution and the number of free variables.
pub fn solve_particular(a: &[Vec<Rat>], b: &[Rat]) -> Result<(Vec<Rat>, usize), SolveError> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let ncols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut full = r.clone();
            full.push(bi.clone());
            integer_row(&full)
        })
        .collect();
    let (pivots, rank_aug) = echelon(&mut rows, ncols + 1);
    let rank = pivots.iter().filter(|&&c| c < ncols).count();
    if rank != rank_aug {
        return Err(SolveError::Inconsistent { rank, rank_aug });
    }
    // back substitution on the (upper triangular) pivot rows
    let mut x = vec![Rat::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let row = &rows[r];
        let mut acc = Rat::from_integer(row[ncols].clone());
        for j in c + 1..ncols {
            if !row[j].is_zero() {
                acc -= Rat::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[c] = acc / Rat::from_integer(row[c].clone());
    }
    Ok((x, ncols - rank))
}

/// Fraction-free row echelon form in place.  Returns the pivot columns and
/// the rank.  Each step keeps rows primitive (content removed) so entries
/// stay small.
fn echelon(rows: &mut [Vec<BigInt>], ncols: usize) -> (Vec<usize>, usize) {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // choose the pivot with the smallest magnitude to limit growth
        let mut best: Option<usize> = None;
        for i in r..nrows {
            if !rows[i][c].is_zero() && best.map_or(true, |b| rows[i][c].bits() < rows[b][c].bits()) {
                best = Some(i);
            }
        }
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        let pv = pivot_row[c].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            let g = f.gcd(&pv);
            let mul_row = &pv / &g;
            let mul_piv = &f / &g;
            for j in c..ncols {
                let v = &row[j] * &mul_row - &pivot_row[j] * &mul_piv;
                row[j] = v;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, r)
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Rank of a rational matrix.
pub fn rank(a: &[Vec<Rat>]) -> usize {
    let ncols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<BigInt>> = a.iter().map(|r| integer_row(r)).collect();
    echelon(&mut rows, ncols).1
}
