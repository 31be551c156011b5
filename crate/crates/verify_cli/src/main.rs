//! `verify23`: command-line access to the theta series, forms, Heegner
//! polynomials, cycle multiplicities and the end-to-end verification.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cycles::{cycle_multiplicities, degree_series, Labeling, ResidueDegrees};
use heegner::{heegner_polynomial, heegner_residues, minpoly_cm, CMContext, Convention, HeegnerCache};
use num_rational::Rational64;
use quadfield::class_group;
use serde_json::json;
use thetaseries::{genus_eisenstein, siegel_weil_check, theta_ideal};
use verify_cli::{ConventionChoice, Pipeline, VerifyConfig};
use whforms23::{tensor_principal_part, FormFactory};

#[derive(Parser, Debug)]
#[command(name = "verify23", version, about = "CM values of Borcherds products on X0(23)+ against special-cycle multiplicities")]
struct Cli {
    /// Fundamental discriminant of the imaginary quadratic field.
    #[arg(long, global = true, allow_hyphen_values = true)]
    discriminant: Option<i64>,
    /// q-expansion order of forms and series.
    #[arg(long, global = true)]
    order: Option<i64>,
    /// Working precision in bits for CM values.
    #[arg(long, global = true)]
    precision_bits: Option<usize>,
    /// Directory for cached Heegner polynomials.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Counting convention for self-paired Heegner divisors.
    #[arg(long, global = true, value_enum)]
    convention: Option<ConventionArg>,
    /// Target |q| after reduction of CM points.
    #[arg(long, global = true)]
    q_bound: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Auto,
    Double,
    Single,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class group, ideal-class theta series and genus Eisenstein series.
    Theta,
    /// The weakly holomorphic form f_m and the principal part of its lift.
    Forms {
        /// Pole order m.
        #[arg(long)]
        m: i64,
        /// Build the minus-space form (m ∈ {2, 3, 4}).
        #[arg(long)]
        minus: bool,
    },
    /// A Heegner polynomial P_d, or the CM minimal polynomial.
    Heegner {
        /// Discriminant magnitude d.
        #[arg(long, required_unless_present = "minpoly")]
        d: Option<i64>,
        /// Residue r with r² ≡ −d mod 92 (default: the smallest).
        #[arg(long)]
        residue: Option<i64>,
        /// Print the minimal polynomial of H(z₂₃) instead.
        #[arg(long)]
        minpoly: bool,
    },
    /// Special-cycle multiplicities and the degree series.
    Cycles {
        /// Largest index m (a multiple of 1/|D|).
        #[arg(long, default_value_t = 30)]
        m_max: i64,
        /// Multiplicities of one index n/|D| instead of the series.
        #[arg(long)]
        n: Option<i64>,
        /// Output format of the series.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the end-to-end verification and print one line per index.
    Verify {
        /// key=value configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Smallest index.
        #[arg(long)]
        m_min: Option<i64>,
        /// Largest index.
        #[arg(long)]
        m_max: Option<i64>,
    },
    /// Run the verification and write report.json, report.csv and run.json.
    Report {
        /// key=value configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Smallest index.
        #[arg(long)]
        m_min: Option<i64>,
        /// Largest index.
        #[arg(long)]
        m_max: Option<i64>,
        /// Output directory.
        #[arg(long, default_value = "report")]
        out: PathBuf,
    },
}

impl Cli {
    /// Defaults, then the configuration file, then explicit flags.
    fn config(&self, file: Option<&PathBuf>, m_min: Option<i64>, m_max: Option<i64>) -> Result<VerifyConfig> {
        let mut c = match file {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                VerifyConfig::parse(&text)?
            }
            None => VerifyConfig::default(),
        };
        if let Some(d) = self.discriminant {
            c.discriminant = d;
        }
        if let Some(o) = self.order {
            c.order = o;
        }
        if let Some(p) = self.precision_bits {
            c.precision_bits = p;
        }
        if let Some(q) = self.q_bound {
            c.q_bound = q;
        }
        if let Some(conv) = self.convention {
            c.convention = match conv {
                ConventionArg::Auto => ConventionChoice::Auto,
                ConventionArg::Single => ConventionChoice::Single,
                ConventionArg::Double => ConventionChoice::Double,
            };
        }
        c.cache_dir = self.cache_dir.clone();
        if let Some(m) = m_min {
            c.m_min = m;
        }
        if let Some(m) = m_max {
            c.m_max = m;
        }
        Ok(c)
    }

    fn discriminant(&self) -> i64 {
        self.discriminant.unwrap_or(-23)
    }

    fn cm_context(&self) -> CMContext {
        let d = CMContext::default();
        CMContext { precision: self.precision_bits.unwrap_or(d.precision), q_bound: self.q_bound.unwrap_or(d.q_bound), ..d }
    }

    fn require_level_23(&self) -> Result<()> {
        if self.discriminant() != -23 {
            bail!("this subcommand is implemented for the discriminant −23 only");
        }
        Ok(())
    }
}

fn print(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON serializes"));
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Theta => {
            let order = cli.order.unwrap_or(60).max(1) as u64;
            let g = class_group(cli.discriminant())?;
            let thetas: Vec<_> = g
                .classes()
                .map(|c| json!({ "class": c.0, "form": g.form(c).to_string(), "series": theta_ideal(&g, c, order).to_json() }))
                .collect();
            let eis: Vec<_> = (0..g.genus_count()).map(|k| genus_eisenstein(&g, k, order).to_json()).collect();
            print(&json!({
                "class_group": g.to_json(),
                "thetas": thetas,
                "eisenstein": eis,
                "siegel_weil": siegel_weil_check(&g, order),
            }));
        }
        Command::Forms { m, minus } => {
            cli.require_level_23()?;
            let order = cli.order.unwrap_or(60);
            let mut factory = FormFactory::new(order, (*m).max(4));
            if *minus {
                print(&json!({ "form": factory.minus(*m)?.to_json() }));
            } else {
                let f = factory.plus(*m)?;
                let table = tensor_principal_part(&f)?;
                print(&json!({ "form": f.to_json(), "principal_part": table.to_json() }));
            }
        }
        Command::Heegner { d, residue, minpoly } => {
            cli.require_level_23()?;
            let ctx = cli.cm_context();
            if *minpoly {
                let mp = minpoly_cm(&ctx)?;
                let coeffs: Vec<String> = mp.poly.clone().into();
                print(&json!({ "poly": mp.poly.to_string(), "coeffs": coeffs, "z23_root": mp.z23_root, "degree6_fallback": mp.degree6_fallback }));
                return Ok(true);
            }
            let d = d.expect("clap enforces --d");
            let r = match residue {
                Some(r) => *r,
                None => *heegner_residues(d).first().with_context(|| format!("{d} is not a Heegner discriminant for level 23"))?,
            };
            let conv = match cli.convention {
                Some(ConventionArg::Double) => Convention::Double,
                _ => Convention::Single,
            };
            let p = match &cli.cache_dir {
                Some(dir) => HeegnerCache::new(dir).get_or_compute(d, r, conv, &ctx)?,
                None => heegner_polynomial(d, r, conv, &ctx)?,
            };
            let mut v = p.to_json();
            v["poly"] = json!(p.poly.to_string());
            print(&v);
        }
        Command::Cycles { m_max, n, format } => {
            let g = class_group(cli.discriminant())?;
            let abs_d = cli.discriminant().abs();
            if let Some(n) = n {
                let z = cycle_multiplicities(&g, Rational64::new(*n, abs_d), g.identity(), Labeling::Direct)?;
                let per: Vec<_> = z.per_sigma.iter().map(|(b, v)| json!({ "class": b.0, "value": v.to_string() })).collect();
                print(&json!({ "m": format!("{n}/{abs_d}"), "p": z.p, "o": z.o, "nu": z.nu.to_string(), "per_sigma": per, "total": z.total().to_string() }));
            } else {
                let s = degree_series(&g, g.identity(), Rational64::from_integer(*m_max), ResidueDegrees::default())?;
                match format {
                    Format::Json => print(&s.to_json()),
                    Format::Csv => print!("{}", s.to_csv()),
                }
            }
        }
        Command::Verify { config, m_min, m_max } => {
            let report = Pipeline::new(cli.config(config.as_ref(), *m_min, *m_max)?)?.verify()?;
            let pinned = report.to_json()["pinned"].clone();
            println!("pinned: {pinned}");
            for r in &report.records {
                let c = &r.checks;
                println!(
                    "m={:>3} diff={:?} observed={:?} predicted={:?} support={} exponent={} degree_identity={} conjugate_agreement={} {}",
                    r.m,
                    r.diff,
                    r.factorization.iter().map(|(q, e)| format!("{q}^{e}")).collect::<Vec<_>>(),
                    r.predicted.iter().map(|(q, e)| format!("{q}^{e}")).collect::<Vec<_>>(),
                    c.support,
                    c.exponent,
                    c.degree_identity,
                    c.conjugate_agreement,
                    if c.all() { "PASS" } else { "FAIL" }
                );
            }
            eprintln!("{}", report.run_summary());
            return Ok(report.all_pass());
        }
        Command::Report { config, m_min, m_max, out } => {
            let report = Pipeline::new(cli.config(config.as_ref(), *m_min, *m_max)?)?.verify()?;
            for p in report.write(out)? {
                println!("{}", p.display());
            }
            return Ok(report.all_pass());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
