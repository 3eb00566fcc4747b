//! Flat `key = value` configuration with environment overrides.

use std::fmt;
use std::path::PathBuf;

use frri_core::eval::{ReportConfig, Variant};
use frri_core::fuzzy::{Implicator, TNorm};
use frri_core::{FrriConfig, FuzzyParams};

/// Prefix of environment variables overriding config keys.
pub const ENV_PREFIX: &str = "FRRI_";

pub const KEYS: &[&str] = &[
    "datasets",
    "variants",
    "theta",
    "similarity_scale",
    "consistency_tolerance",
    "tnorm",
    "implicator",
    "node_budget",
    "seed",
    "folds",
    "label_column",
    "csv_delimiter",
    "output_dir",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

type Result<T> = std::result::Result<T, ConfigError>;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub datasets: Vec<PathBuf>,
    pub variants: Vec<Variant>,
    pub frri: FrriConfig,
    pub seed: u64,
    pub folds: usize,
    /// Name of the class column in CSV inputs.
    pub label_column: String,
    /// Field separator of CSV inputs.
    pub csv_delimiter: u8,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            datasets: Vec::new(),
            variants: vec![
                Variant::CONTROL,
                "ofrfs-1".parse().expect("valid variant"),
                "ofrfs-0".parse().expect("valid variant"),
            ],
            frri: FrriConfig::default(),
            seed: 42,
            folds: 10,
            label_column: "class".into(),
            csv_delimiter: b',',
            output_dir: PathBuf::from("report"),
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| ConfigError(format!("`{key}`: cannot parse `{v}`")))
}

fn list(v: &str) -> impl Iterator<Item = &str> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty())
}

/// A single ASCII character, or `tab`.
fn parse_delimiter(v: &str) -> Result<u8> {
    match v {
        "tab" | "\\t" => Ok(b'\t'),
        _ if v.len() == 1 && v.is_ascii() => Ok(v.as_bytes()[0]),
        _ => Err(ConfigError(format!("`csv_delimiter`: expected one character or `tab`, got `{v}`"))),
    }
}

impl ExperimentConfig {
    /// Sets one key from its text form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "datasets" => self.datasets = list(value).map(PathBuf::from).collect(),
            "variants" => {
                self.variants = list(value)
                    .map(|v| v.parse().map_err(|e| ConfigError(format!("`variants`: {e}"))))
                    .collect::<Result<_>>()?
            }
            "theta" => self.frri.coverage_threshold = parse_num(key, value)?,
            "similarity_scale" => self.frri.fuzzy.similarity_scale = parse_num(key, value)?,
            "consistency_tolerance" => self.frri.consistency_tolerance = parse_num(key, value)?,
            "tnorm" => {
                self.frri.fuzzy.tnorm = value.parse::<TNorm>().map_err(|e| ConfigError(format!("`tnorm`: {e}")))?
            }
            "implicator" => {
                self.frri.fuzzy.implicator = value
                    .parse::<Implicator>()
                    .map_err(|e| ConfigError(format!("`implicator`: {e}")))?
            }
            "node_budget" => self.frri.node_budget = parse_num(key, value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "folds" => self.folds = parse_num(key, value)?,
            "label_column" => self.label_column = value.to_string(),
            "csv_delimiter" => self.csv_delimiter = parse_delimiter(value)?,
            "output_dir" => self.output_dir = PathBuf::from(value),
            other => {
                return Err(ConfigError(format!(
                    "unknown config key `{other}`; known keys: {}",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Applies a config document: one `key = value` per line, `#` comments.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected `key = value`", i + 1)))?;
            self.set(k.trim(), v).map_err(|e| ConfigError(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    /// Applies `FRRI_<KEY>` variables found through `lookup`.
    pub fn apply_env(&mut self, lookup: impl Fn(&str) -> Option<String>) -> Result<()> {
        for key in KEYS {
            let var = format!("{ENV_PREFIX}{}", key.to_ascii_uppercase());
            if let Some(v) = lookup(&var) {
                self.set(key, &v).map_err(|e| ConfigError(format!("{var}: {e}")))?;
            }
        }
        Ok(())
    }

    pub fn validate(&self, need_datasets: bool) -> Result<()> {
        if need_datasets && self.datasets.is_empty() {
            return Err(ConfigError("no datasets configured".into()));
        }
        if self.variants.is_empty() {
            return Err(ConfigError("no variants configured".into()));
        }
        if self.folds < 2 {
            return Err(ConfigError(format!("folds must be at least 2, got {}", self.folds)));
        }
        self.frri.validate().map_err(|e| ConfigError(e.to_string()))
    }

    pub fn fuzzy(&self) -> FuzzyParams {
        self.frri.fuzzy
    }

    /// Every key with its resolved value.
    pub fn echo(&self) -> ReportConfig {
        let mut r = ReportConfig::default();
        let paths: Vec<String> = self.datasets.iter().map(|p| p.display().to_string()).collect();
        let variants: Vec<String> = self.variants.iter().map(Variant::to_string).collect();
        r.push("datasets", paths.join(", "));
        r.push("variants", variants.join(", "));
        r.push("theta", self.frri.coverage_threshold);
        r.push("similarity_scale", self.frri.fuzzy.similarity_scale);
        r.push("consistency_tolerance", self.frri.consistency_tolerance);
        r.push("tnorm", self.frri.fuzzy.tnorm);
        r.push("implicator", self.frri.fuzzy.implicator);
        r.push("node_budget", self.frri.node_budget);
        r.push("seed", self.seed);
        r.push("folds", self.folds);
        r.push("label_column", &self.label_column);
        r.push(
            "csv_delimiter",
            if self.csv_delimiter == b'\t' { "tab".to_string() } else { char::from(self.csv_delimiter).to_string() },
        );
        r.push("output_dir", self.output_dir.display());
        r
    }

    /// The echo as a config document that parses back to the same values.
    pub fn to_text(&self) -> String {
        self.echo()
            .entries
            .iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use frri_core::setcover::DEFAULT_NODE_BUDGET;
    use std::collections::HashMap;

    #[test]
    fn defaults() {
        let c = ExperimentConfig::default();
        assert_eq!(c.frri.coverage_threshold, 0.5);
        assert_eq!(c.frri.consistency_tolerance, 0.0);
        assert_eq!(c.frri.node_budget, DEFAULT_NODE_BUDGET);
        assert_eq!(c.frri.fuzzy.tnorm, TNorm::Minimum);
        assert_eq!(c.frri.fuzzy.implicator, Implicator::Lukasiewicz);
    }

    #[test]
    fn text_then_env() {
        let mut c = ExperimentConfig::default();
        c.apply_text("# comment\ntheta = 0.3  # trailing\nvariants = control, ofrfs-0.9,mi-0.5\n\ndatasets = a.dat, b.dat\n")
            .unwrap();
        assert_eq!(c.frri.coverage_threshold, 0.3);
        assert_eq!(c.variants.len(), 3);
        assert_eq!(c.datasets.len(), 2);
        let env: HashMap<&str, &str> = [("FRRI_THETA", "0.8"), ("FRRI_SEED", "7")].into();
        c.apply_env(|k| env.get(k).map(|s| s.to_string())).unwrap();
        assert_eq!(c.frri.coverage_threshold, 0.8);
        assert_eq!(c.seed, 7);
        c.validate(true).unwrap();
    }

    #[test]
    fn echo_reparses() {
        let mut c = ExperimentConfig::default();
        c.apply_text("datasets = x.dat\ntnorm = product\nsimilarity_scale = 0.25\ncsv_delimiter = tab\n").unwrap();
        assert_eq!(c.csv_delimiter, b'\t');
        let mut d = ExperimentConfig::default();
        d.apply_text(&c.to_text()).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn errors() {
        let mut c = ExperimentConfig::default();
        assert!(c.apply_text("bogus = 1").is_err());
        assert!(c.apply_text("theta").is_err());
        assert!(c.apply_text("csv_delimiter = ;;").is_err());
        assert!(c.apply_text("theta = abc").is_err());
        assert!(c.apply_text("variants = control, nope-1").is_err());
        let mut c = ExperimentConfig::default();
        c.apply_text("theta = 1.5").unwrap();
        assert!(c.validate(false).is_err());
        assert!(ExperimentConfig::default().validate(true).is_err());
    }
}
