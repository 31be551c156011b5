//! Run configuration and its `key=value` file format.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use heegner::Convention;

use crate::VerifyError;

/// How self-paired Heegner divisors are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConventionChoice {
    /// Pick the convention satisfying the degree identity at the smallest
    /// index where the two differ, then keep it for the run.
    Auto,
    /// Always [`Convention::Single`].
    Single,
    /// Always [`Convention::Double`].
    Double,
}

impl ConventionChoice {
    /// The fixed convention, if not automatic.
    pub fn fixed(self) -> Option<Convention> {
        match self {
            ConventionChoice::Auto => None,
            ConventionChoice::Single => Some(Convention::Single),
            ConventionChoice::Double => Some(Convention::Double),
        }
    }
}

impl FromStr for ConventionChoice {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, VerifyError> {
        match s.trim() {
            "auto" => Ok(ConventionChoice::Auto),
            "single" => Ok(ConventionChoice::Single),
            "double" => Ok(ConventionChoice::Double),
            other => Err(VerifyError::Config(format!("unknown convention {other:?} (auto, single or double)"))),
        }
    }
}

impl fmt::Display for ConventionChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConventionChoice::Auto => "auto",
            ConventionChoice::Single => "single",
            ConventionChoice::Double => "double",
        })
    }
}

/// Settings for a verification run.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    /// The discriminant (only `−23` has the full pipeline).
    pub discriminant: i64,
    /// Smallest index `m`.
    pub m_min: i64,
    /// Largest index `m`.
    pub m_max: i64,
    /// Exclusive `q`-order of the forms `f_m`.
    pub order: i64,
    /// Working precision in bits for CM values.
    pub precision_bits: usize,
    /// Self-paired divisor convention.
    pub convention: ConventionChoice,
    /// Target `|q|` after reduction of CM points.
    pub q_bound: f64,
    /// Directory for cached Heegner polynomials.
    pub cache_dir: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            discriminant: -23,
            m_min: 2,
            m_max: 30,
            order: 60,
            precision_bits: 256,
            convention: ConventionChoice::Auto,
            q_bound: 0.35,
            cache_dir: None,
        }
    }
}

fn parse<T: FromStr>(key: &str, v: &str) -> Result<T, VerifyError> {
    v.trim().parse().map_err(|_| VerifyError::Config(format!("bad value {v:?} for {key}")))
}

impl VerifyConfig {
    /// Parses `key=value` lines (blank lines and `#` comments ignored) over
    /// the defaults.  Keys: `discriminant`, `m_min`, `m_max`, `order`,
    /// `precision_bits`, `conventions`.
    pub fn parse(text: &str) -> Result<Self, VerifyError> {
        let mut c = VerifyConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| VerifyError::Config(format!("line {}: expected key=value", i + 1)))?;
            let k = k.trim();
            match k {
                "discriminant" => c.discriminant = parse(k, v)?,
                "m_min" => c.m_min = parse(k, v)?,
                "m_max" => c.m_max = parse(k, v)?,
                "order" => c.order = parse(k, v)?,
                "precision_bits" => c.precision_bits = parse(k, v)?,
                "conventions" => c.convention = v.parse()?,
                other => return Err(VerifyError::Config(format!("line {}: unknown key {other:?}", i + 1))),
            }
        }
        Ok(c)
    }

    /// The `key=value` rendering read by [`VerifyConfig::parse`].
    pub fn to_config_text(&self) -> String {
        format!(
            "discriminant={}\nm_min={}\nm_max={}\norder={}\nprecision_bits={}\nconventions={}\n",
            self.discriminant, self.m_min, self.m_max, self.order, self.precision_bits, self.convention
        )
    }

    /// JSON view of the settings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "discriminant": self.discriminant,
            "m_min": self.m_min,
            "m_max": self.m_max,
            "order": self.order,
            "precision_bits": self.precision_bits,
            "conventions": self.convention.to_string(),
            "q_bound": self.q_bound,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_defaults() {
        let c = VerifyConfig::parse("# run\nm_min = 5\nm_max=12\nconventions=double\n").unwrap();
        assert_eq!((c.m_min, c.m_max, c.convention), (5, 12, ConventionChoice::Double));
        assert_eq!(c.discriminant, -23);
        assert_eq!(VerifyConfig::parse(&c.to_config_text()).unwrap(), c);
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(VerifyConfig::parse("m_min").is_err());
        assert!(VerifyConfig::parse("colour=blue").is_err());
        assert!(VerifyConfig::parse("order=many").is_err());
        assert!(VerifyConfig::parse("conventions=triple").is_err());
    }
}
