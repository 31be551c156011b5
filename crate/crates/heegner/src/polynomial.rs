//! The integer polynomials `P_d(x) = ∏ (x − H(z))` over Heegner divisors.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use qseries::bigcomplex::real;
use qseries::{BigComplex, IPoly};
use quadfield::QuadForm;
use rayon::prelude::*;
use serde_json::json;

use crate::evaluate::eval_h23;
use crate::points::{enumerate_points, HeegnerPoint};
use crate::{CMContext, HeegnerError, LEVEL};

/// Largest accepted distance of a coefficient from an integer.
pub const ROUNDING_TOLERANCE: f64 = 1e-10;

/// How a self-paired divisor (`r ≡ −r mod 46`) enters `Z(μ) + Z(−μ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Each geometric point once (union).
    Single,
    /// Each geometric point twice (formal sum of the two equal divisors).
    Double,
}

impl Convention {
    /// `"single"` or `"double"`.
    pub fn name(self) -> &'static str {
        match self {
            Convention::Single => "single",
            Convention::Double => "double",
        }
    }

    /// Parses [`Convention::name`].
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "single" => Some(Convention::Single),
            "double" => Some(Convention::Double),
            _ => None,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rounded Heegner polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct HeegnerPolynomial {
    /// The discriminant magnitude `d`.
    pub d: i64,
    /// `{r, −r} mod 46`.
    pub residues: Vec<i64>,
    /// The self-paired convention used.
    pub convention: Convention,
    /// Precision (bits) at which the coefficients rounded.
    pub precision: usize,
    /// The polynomial.
    pub poly: IPoly,
    /// Base-2 logarithm of the largest distance of a computed coefficient
    /// from its integer (`-inf` when loaded from a cache).
    pub deviation_log2: f64,
}

impl HeegnerPolynomial {
    /// JSON document `{d, residues, convention, precision, coeffs}` with
    /// coefficients as decimal strings from the constant term up.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<String> = self.poly.clone().into();
        json!({
            "d": self.d,
            "residues": self.residues,
            "convention": self.convention.name(),
            "precision": self.precision,
            "coeffs": coeffs,
        })
    }

    /// Inverse of [`HeegnerPolynomial::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        let coeffs: Vec<String> = serde_json::from_value(v.get("coeffs")?.clone()).ok()?;
        Some(HeegnerPolynomial {
            d: v.get("d")?.as_i64()?,
            residues: serde_json::from_value(v.get("residues")?.clone()).ok()?,
            convention: Convention::parse(v.get("convention")?.as_str()?)?,
            precision: v.get("precision")?.as_u64()? as usize,
            poly: IPoly::try_from(coeffs).ok()?,
            deviation_log2: f64::NEG_INFINITY,
        })
    }
}

/// `∏ (x − vᵢ)` with complex coefficients, constant term first.
fn expand_roots(values: &[BigComplex], prec: usize) -> Vec<BigComplex> {
    let mut c = vec![BigComplex::one(prec)];
    for v in values {
        let mut next = vec![BigComplex::zero(prec); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] = next[i + 1].add(ci);
            next[i] = next[i].sub(&ci.mul(v));
        }
        c = next;
    }
    c
}

/// Rounds complex coefficients to integers; returns the polynomial and the
/// largest deviation (`log2`), counting imaginary parts as deviation.
fn round_coefficients(c: &[BigComplex]) -> (IPoly, f64) {
    let mut dev = f64::NEG_INFINITY;
    let mut out: Vec<BigInt> = Vec::with_capacity(c.len());
    for z in c {
        let (n, d) = z.round_real();
        dev = dev.max(d).max(real::log2_abs(z.im()));
        out.push(n);
    }
    (IPoly::new(out), dev)
}

fn values_at(points: &[HeegnerPoint], ctx: &CMContext) -> Result<Vec<BigComplex>, HeegnerError> {
    points.par_iter().map(|p| eval_h23(&p.tau(ctx.precision + 32), ctx)).collect()
}

/// The CM values `H(z)` over the divisor of `(d, ±r)`, repeated according
/// to `convention` when the divisor is self-paired.
pub fn divisor_values(d: i64, r: i64, convention: Convention, ctx: &CMContext) -> Result<Vec<BigComplex>, HeegnerError> {
    let div = enumerate_points(d, r)?;
    let mut v = values_at(&div.points, ctx)?;
    if div.is_self_paired() && convention == Convention::Double {
        v.extend(v.clone());
    }
    Ok(v)
}

/// `P_d(x) = ∏ (x − H(z))` over the points of residues `±r`, rounded to
/// integers.
///
/// The product runs over both residues (once when `r ≡ −r`, twice under
/// [`Convention::Double`]).  Coefficients must lie within `10⁻¹⁰` of
/// integers; otherwise the precision is doubled up to the context's cap.
pub fn heegner_polynomial(d: i64, r: i64, convention: Convention, ctx: &CMContext) -> Result<HeegnerPolynomial, HeegnerError> {
    let div = enumerate_points(d, r)?;
    let mut ctx = *ctx;
    loop {
        let values = divisor_values(d, r, convention, &ctx)?;
        let (poly, deviation_log2) = round_coefficients(&expand_roots(&values, ctx.precision + 32));
        if deviation_log2 < ROUNDING_TOLERANCE.log2() {
            return Ok(HeegnerPolynomial { d, residues: div.residues, convention, precision: ctx.precision, poly, deviation_log2 });
        }
        match ctx.escalated() {
            Some(next) => ctx = next,
            None => return Err(HeegnerError::RoundingFailure { d, precision: ctx.precision, deviation_log2 }),
        }
    }
}

/// A directory of cached polynomials keyed by `(23, d, residues,
/// convention)`.
///
/// Writes go through a temporary file and a rename, so concurrent readers
/// never see partial documents.
#[derive(Clone, Debug)]
pub struct HeegnerCache {
    dir: PathBuf,
}

impl HeegnerCache {
    /// A cache rooted at `dir` (created on first store).
    pub fn new(dir: impl AsRef<Path>) -> Self {
        HeegnerCache { dir: dir.as_ref().to_path_buf() }
    }

    /// The file for `(d, r, convention)`; `r` is normalized to
    /// `min(r, −r mod 46)`.
    pub fn path(&self, d: i64, r: i64, convention: Convention) -> PathBuf {
        let r = r.rem_euclid(2 * LEVEL);
        let r = r.min((2 * LEVEL - r) % (2 * LEVEL));
        self.dir.join(format!("heegner_N{LEVEL}_d{d}_r{r}_{convention}.json"))
    }

    /// The cached polynomial, if present and consistent with the key.
    pub fn load(&self, d: i64, r: i64, convention: Convention) -> Option<HeegnerPolynomial> {
        let text = fs::read_to_string(self.path(d, r, convention)).ok()?;
        let p = HeegnerPolynomial::from_json(&serde_json::from_str(&text).ok()?)?;
        let r = r.rem_euclid(2 * LEVEL);
        (p.d == d && p.convention == convention && p.residues.contains(&r)).then_some(p)
    }

    /// Stores `p`.
    pub fn store(&self, p: &HeegnerPolynomial) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(p.d, p.residues[0], p.convention);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&p.to_json()).map_err(io::Error::other)?)?;
        fs::rename(tmp, path)
    }

    /// Loads `(d, r, convention)` or computes and stores it.
    pub fn get_or_compute(&self, d: i64, r: i64, convention: Convention, ctx: &CMContext) -> Result<HeegnerPolynomial, HeegnerError> {
        if let Some(p) = self.load(d, r, convention) {
            return Ok(p);
        }
        let p = heegner_polynomial(d, r, convention, ctx)?;
        // a failed write only costs a recomputation later
        let _ = self.store(&p);
        Ok(p)
    }
}

/// The form `[23, 23, 6]` of `z₂₃ = (−23 + √−23)/46`.
pub const Z23_FORM: QuadForm = QuadForm::new(23, 23, 6);

/// The cubic over the three Heegner points of discriminant `−23`.
#[derive(Clone, Debug)]
pub struct CmMinpoly {
    /// The rounded polynomial (degree 3, or 6 when `degree6_fallback`).
    pub poly: IPoly,
    /// The CM values `H(zᵢ)`, in point order.
    pub roots: Vec<BigComplex>,
    /// Index in `roots` of `H(z₂₃)`.
    pub z23_root: usize,
    /// Indices of the two remaining roots, which are complex conjugates.
    pub conjugate_pair: (usize, usize),
    /// True if the cubic did not round and the degree-6 product over both
    /// copies was used instead.
    pub degree6_fallback: bool,
}

/// The minimal polynomial of `H(z₂₃)`: `∏ (x − H(zᵢ))` over the three
/// points of discriminant `−23`, with the root `H(z₂₃)` identified (the
/// unique real root, else the closest to a direct evaluation) and the
/// other two paired as conjugates.
pub fn minpoly_cm(ctx: &CMContext) -> Result<CmMinpoly, HeegnerError> {
    let (poly, degree6_fallback) = match heegner_polynomial(LEVEL, LEVEL, Convention::Single, ctx) {
        Ok(p) => (p.poly, false),
        Err(HeegnerError::RoundingFailure { .. }) => (heegner_polynomial(LEVEL, LEVEL, Convention::Double, ctx)?.poly, true),
        Err(e) => return Err(e),
    };
    let div = enumerate_points(LEVEL, LEVEL)?;
    let roots = values_at(&div.points, ctx)?;
    let tol = -(ctx.precision as f64) / 2.0;
    let real: Vec<usize> = (0..roots.len()).filter(|&i| real::log2_abs(roots[i].im()) < tol).collect();
    let z23_root = if real.len() == 1 {
        real[0]
    } else {
        let z = eval_h23(&HeegnerPoint::new(Z23_FORM).expect("valid form").tau(ctx.precision + 32), ctx)?;
        (0..roots.len())
            .min_by(|&a, &b| roots[a].log2_dist(&z).total_cmp(&roots[b].log2_dist(&z)))
            .expect("three roots")
    };
    let rest: Vec<usize> = (0..roots.len()).filter(|&i| i != z23_root).collect();
    Ok(CmMinpoly { poly, roots, z23_root, conjugate_pair: (rest[0], rest[1]), degree6_fallback })
}
