//! Verification records and their JSON / CSV renderings.
//!
//! The JSON report depends only on the configuration, so two runs produce
//! identical files; cache counters and timing go to a separate run summary.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use num_bigint::BigUint;
use qseries::Rat;
use serde_json::{json, Value};

use crate::config::VerifyConfig;
use crate::pipeline::{decimal, AnalyticSide, ArithmeticSide, CacheStats, Pinned};
use crate::VerifyError;

/// Significant digits of the coefficient values in reports.
const DIGITS: usize = 40;

/// Outcome of the four per-index checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checks {
    /// The norm is supported on `Diff(m/23)` (a unit when `|Diff| ≥ 3`),
    /// fully factored, with integral exponents.
    pub support: bool,
    /// The exponent equals the pinned constant times `ΣZ`.
    pub exponent: bool,
    /// `Σᵢ vᵢ = −w_k·\widehat{deg}Z(m/23)` numerically, and the matching
    /// integer identity holds exactly.
    pub degree_identity: bool,
    /// The values at the two complex-conjugate roots agree.
    pub conjugate_agreement: bool,
}

impl Checks {
    /// All four checks pass.
    pub fn all(&self) -> bool {
        self.support && self.exponent && self.degree_identity && self.conjugate_agreement
    }

    fn to_json(self) -> Value {
        json!({
            "support": self.support,
            "exponent": self.exponent,
            "degree_identity": self.degree_identity,
            "conjugate_agreement": self.conjugate_agreement,
        })
    }
}

/// The comparison at one index `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationRecord {
    /// The index.
    pub m: i64,
    /// `Diff(m/23)`.
    pub diff: Vec<u64>,
    /// `|N_m|` as a reduced fraction (absent if some exponent is not an
    /// integer).
    pub norm: Option<(BigUint, BigUint)>,
    /// The sign of `N_m`, when defined.
    pub sign: Option<i8>,
    /// Observed exponents `e_q`.
    pub factorization: BTreeMap<BigUint, Rat>,
    /// Predicted exponents `K·ΣZ`.
    pub predicted: BTreeMap<u64, Rat>,
    /// `Σ_𝔟 Z(m/23)` for the principal class.
    pub cycle_sum: Rat,
    /// Decimal renderings of `−(1/12)·log|R_m(xᵢ)|`.
    pub coeffs: Vec<String>,
    /// The exponents `C(d)` of `R_m`.
    pub exponents: BTreeMap<i64, Rat>,
    /// Agreement with the direct resultant, when every exponent is an
    /// integer.
    pub resultant_oracle: Option<bool>,
    /// The checks.
    pub checks: Checks,
}

impl VerificationRecord {
    /// Assembles a record from both sides and the evaluated checks.
    pub fn new(a: &AnalyticSide, z: &ArithmeticSide, predicted: BTreeMap<u64, Rat>, checks: Checks) -> Self {
        VerificationRecord {
            m: a.m,
            diff: z.diff.clone(),
            norm: a.norm_fraction(),
            sign: a.sign,
            factorization: a.exponents.clone(),
            predicted,
            cycle_sum: crate::pipeline::rat64(z.cycle_sum),
            coeffs: a.values.iter().map(|v| decimal(v, DIGITS)).collect(),
            exponents: a.factors.iter().map(|f| (f.d, f.exponent.clone())).collect(),
            resultant_oracle: a.resultant_oracle,
            checks,
        }
    }

    /// The supporting prime's observed exponent (zero if absent).
    pub fn observed(&self, p: u64) -> Rat {
        self.factorization.get(&BigUint::from(p)).cloned().unwrap_or_default()
    }

    /// JSON view.
    pub fn to_json(&self) -> Value {
        let (num, den) = match &self.norm {
            Some((n, d)) => (Value::String(n.to_string()), Value::String(d.to_string())),
            None => (Value::Null, Value::Null),
        };
        let factorization: serde_json::Map<String, Value> = self.factorization.iter().map(|(q, e)| (q.to_string(), Value::String(e.to_string()))).collect();
        let predicted: serde_json::Map<String, Value> = self.predicted.iter().map(|(p, e)| (p.to_string(), Value::String(e.to_string()))).collect();
        let exponents: serde_json::Map<String, Value> = self.exponents.iter().map(|(d, e)| (d.to_string(), Value::String(e.to_string()))).collect();
        json!({
            "m": self.m,
            "diff": self.diff,
            "norm_num": num,
            "norm_den": den,
            "sign": self.sign,
            "factorization": factorization,
            "predicted": predicted,
            "cycle_sum": self.cycle_sum.to_string(),
            "exponents": exponents,
            "coeffs": self.coeffs,
            "resultant_oracle": self.resultant_oracle,
            "checks": self.checks.to_json(),
        })
    }
}

/// A full verification run.
#[derive(Clone, Debug)]
pub struct Report {
    /// The configuration.
    pub config: VerifyConfig,
    /// The pinned constants and convention.
    pub pinned: Pinned,
    /// One record per admissible index.
    pub records: Vec<VerificationRecord>,
    /// Heegner cache counters.
    pub cache: CacheStats,
    /// Wall-clock time of the run.
    pub elapsed: Duration,
}

fn opt_rat(x: Option<Rat>) -> Value {
    x.map_or(Value::Null, |r| Value::String(r.to_string()))
}

impl Report {
    /// True if every check of every record passed.
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.checks.all())
    }

    /// The record at `m`.
    pub fn record(&self, m: i64) -> Option<&VerificationRecord> {
        self.records.iter().find(|r| r.m == m)
    }

    /// The deterministic JSON report
    /// `{config, pinned:{f_ramified, f_inert, constant, mu_convention}, records}`.
    pub fn to_json(&self) -> Value {
        let res = &self.pinned.convention;
        json!({
            "config": self.config.to_json(),
            "pinned": {
                "f_ramified": opt_rat(self.pinned.f_ramified()),
                "f_inert": opt_rat(self.pinned.f_inert()),
                "constant": self.pinned.constant,
                "k_ramified": self.pinned.k_ramified.as_ref().map(|(m, k)| json!({"m": m, "k": k.to_string()})),
                "k_inert": self.pinned.k_inert.as_ref().map(|(m, k)| json!({"m": m, "k": k.to_string()})),
                "mu_convention": res.chosen.name(),
                "mu_convention_source": if res.fixed { "configured" } else { "auto" },
                "mu_convention_decided_at": res.decided_at,
                "single_holds": res.single_holds,
                "double_holds": res.double_holds,
            },
            "records": self.records.iter().map(VerificationRecord::to_json).collect::<Vec<_>>(),
        })
    }

    /// Cache counters and timing.
    pub fn run_summary(&self) -> Value {
        json!({
            "cache_hits": self.cache.hits,
            "cache_misses": self.cache.misses,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }

    /// A flat CSV table, one row per record.
    pub fn to_csv(&self) -> Result<String, VerifyError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "m", "diff", "prime", "observed", "predicted", "norm_num", "norm_den", "coeff_1", "coeff_2", "coeff_3", "support", "exponent",
            "degree_identity", "conjugate_agreement",
        ])?;
        for r in &self.records {
            let prime = r.predicted.keys().next().copied().or((r.diff.len() == 1).then(|| r.diff[0]));
            let (num, den) = r.norm.as_ref().map_or((String::new(), String::new()), |(n, d)| (n.to_string(), d.to_string()));
            let coeff = |i: usize| r.coeffs.get(i).cloned().unwrap_or_default();
            w.write_record([
                r.m.to_string(),
                r.diff.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
                prime.map(|p| p.to_string()).unwrap_or_default(),
                prime.map(|p| r.observed(p).to_string()).unwrap_or_else(|| "0".into()),
                prime.and_then(|p| r.predicted.get(&p)).map(|e| e.to_string()).unwrap_or_else(|| "0".into()),
                num,
                den,
                coeff(0),
                coeff(1),
                coeff(2),
                r.checks.support.to_string(),
                r.checks.exponent.to_string(),
                r.checks.degree_identity.to_string(),
                r.checks.conjugate_agreement.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| VerifyError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("CSV is UTF-8"))
    }

    /// Writes `report.json`, `report.csv` and `run.json` into `dir`;
    /// returns the paths written.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>, VerifyError> {
        fs::create_dir_all(dir)?;
        let files = [
            ("report.json", serde_json::to_string_pretty(&self.to_json()).expect("JSON serializes") + "\n"),
            ("report.csv", self.to_csv()?),
            ("run.json", serde_json::to_string_pretty(&self.run_summary()).expect("JSON serializes") + "\n"),
        ];
        let mut out = Vec::new();
        for (name, body) in files {
            let path = dir.join(name);
            fs::write(&path, body)?;
            out.push(path);
        }
        Ok(out)
    }
}
