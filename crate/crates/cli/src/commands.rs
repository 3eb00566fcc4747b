use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use log::{info, warn};
use serde_json::Value;

use frri_core::data::{fit_normalize, parse_csv_with_delimiter, parse_keel, RawDataset};
use frri_core::eval::{balanced_accuracy, cv_folds, fit_variant, run_cv, MetricsReport, Variant};
use frri_core::ranking::{apply_policy, rank as rank_attributes, RankingMethod, RetentionPolicy};
use frri_core::{DecisionSystem, Error, Ruleset};

use crate::config::{ConfigError, ExperimentConfig};
use crate::Settings;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config or input files.
    Usage(String),
    /// Some datasets of an experiment failed; the rest were reported.
    Partial(usize),
    /// A library contract was violated.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Partial(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => f.write_str(m),
            CliError::Partial(n) => write!(f, "{n} dataset(s) failed; see the log above"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible { .. } | Error::DegreeOutOfRange { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.0)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Reads a KEEL `.dat` file, or a `.csv` with a header and a label column.
pub fn load_raw(path: &Path, cfg: &ExperimentConfig) -> Result<RawDataset, CliError> {
    let text = read(path)?;
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let raw = if is_csv { parse_csv_with_delimiter(&text, &cfg.label_column, cfg.csv_delimiter) } else { parse_keel(&text) };
    let raw = raw.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    for w in &raw.warnings {
        warn!("{}: {w}", path.display());
    }
    Ok(raw)
}

fn resolve(settings: &Settings) -> Result<ExperimentConfig, CliError> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &settings.config {
        cfg.apply_text(&read(path)?)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    cfg.apply_env(|k| std::env::var(k).ok())?;
    for o in &settings.overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got `{o}`")))?;
        cfg.set(k.trim(), v)?;
    }
    Ok(cfg)
}

fn parse_variant(method: &str, retain: &str) -> Result<Variant, CliError> {
    let method: RankingMethod = method.parse()?;
    let policy: RetentionPolicy = retain.parse()?;
    Ok(Variant::new(method, policy)?)
}

pub fn rank(dataset: &Path, method: &str, retain: &str, output: Option<&Path>, settings: &Settings) -> Result<(), CliError> {
    let variant = parse_variant(method, retain)?;
    let cfg = resolve(settings)?;
    cfg.validate(false)?;
    let raw = load_raw(dataset, &cfg)?;
    let ds: DecisionSystem = fit_normalize(&raw)?;
    let order = rank_attributes(&ds, variant.method, &cfg.fuzzy())?;
    let retained = apply_policy(&order, variant.policy, ds.num_attributes())?;

    let mut doc = serde_json::to_value(&order).map_err(|e| CliError::Internal(e.to_string()))?;
    if let Value::Object(map) = &mut doc {
        let names: Vec<&str> = order.ranked_indices.iter().map(|&a| ds.attribute_names()[a].as_str()).collect();
        map.insert("attribute_names".into(), names.into());
        map.insert("retention".into(), variant.policy.to_string().into());
        map.insert("retained_attributes".into(), retained.clone().into());
        let kept: Vec<&str> = retained.iter().map(|&a| ds.attribute_names()[a].as_str()).collect();
        map.insert("retained_names".into(), kept.into());
    }
    let text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Internal(e.to_string()))?;
    emit(output, &(text + "\n"))
}

pub fn fit(train: &Path, method: &str, retain: &str, output: Option<&Path>, show: bool, settings: &Settings) -> Result<(), CliError> {
    let variant = parse_variant(method, retain)?;
    let cfg = resolve(settings)?;
    cfg.validate(false)?;
    let raw = load_raw(train, &cfg)?;
    let ds: DecisionSystem = fit_normalize(&raw)?;
    let ruleset = fit_variant(&ds, variant, &cfg.frri)?;
    info!(
        "{} rules from {} candidates, mean length {:.2}, selection optimal: {}",
        ruleset.len(),
        ruleset.candidate_rules,
        ruleset.mean_rule_length()?,
        ruleset.optimal
    );
    if show {
        eprint!("{}", ruleset.render());
    }
    emit(output, &(ruleset.to_json()? + "\n"))
}

/// Checks that `raw` has the columns the ruleset was trained on.
fn check_schema(ruleset: &Ruleset, raw: &RawDataset) -> Result<(), CliError> {
    let norm = &ruleset.normalization;
    if raw.num_attributes() != norm.raw_arity {
        return Err(CliError::Usage(format!(
            "test file has {} attributes, ruleset expects {}",
            raw.num_attributes(),
            norm.raw_arity
        )));
    }
    for (name, &col) in ruleset.attributes.iter().zip(&norm.source_columns) {
        if &raw.attribute_names[col] != name {
            return Err(CliError::Usage(format!(
                "column {} is `{}` in the test file but `{name}` in the ruleset",
                col + 1,
                raw.attribute_names[col]
            )));
        }
    }
    Ok(())
}

pub fn predict(ruleset_path: &Path, test: &Path, output: Option<&Path>, settings: &Settings) -> Result<(), CliError> {
    let cfg = resolve(settings)?;
    let ruleset = Ruleset::from_json(&read(ruleset_path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", ruleset_path.display())))?;
    let raw = load_raw(test, &cfg)?;
    if raw.num_objects() == 0 {
        return Err(CliError::Usage(format!("{}: no objects to classify", test.display())));
    }
    check_schema(&ruleset, &raw)?;
    let predicted = raw
        .values
        .iter()
        .map(|row| ruleset.classify_raw(row).map(|c| ruleset.class_name(c).to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = String::from("row,predicted,actual\n");
    for (i, (p, a)) in predicted.iter().zip(&raw.labels).enumerate() {
        csv.push_str(&format!("{},{p},{a}\n", i + 1));
    }
    emit(output, &csv)?;
    let ba = balanced_accuracy(&raw.labels, &predicted)?;
    eprintln!("balanced_accuracy = {ba}");
    Ok(())
}

/// KEEL fold files `<name>-<k>-<i>tra.dat` / `tst.dat` next to `path` or
/// inside it when it is a directory.
fn discover_folds(path: &Path, k: usize) -> Option<(String, Vec<(PathBuf, PathBuf)>)> {
    let (dir, name) = if path.is_dir() {
        let dir = path.to_path_buf();
        let name = fs::read_dir(&dir).ok()?.find_map(|e| {
            let f = e.ok()?.file_name().into_string().ok()?;
            f.strip_suffix(&format!("-{k}-1tra.dat")).map(str::to_string)
        })?;
        (dir, name)
    } else {
        let stem = path.file_stem()?.to_str()?.to_string();
        (path.parent().unwrap_or(Path::new(".")).to_path_buf(), stem)
    };
    let pairs: Vec<(PathBuf, PathBuf)> = (1..=k)
        .map(|i| {
            (
                dir.join(format!("{name}-{k}-{i}tra.dat")),
                dir.join(format!("{name}-{k}-{i}tst.dat")),
            )
        })
        .collect();
    pairs.iter().all(|(a, b)| a.is_file() && b.is_file()).then_some((name, pairs))
}

fn dataset_folds(path: &Path, cfg: &ExperimentConfig) -> Result<(String, Vec<(RawDataset, RawDataset)>), CliError> {
    if let Some((name, pairs)) = discover_folds(path, cfg.folds) {
        info!("{name}: using {} fold files", pairs.len());
        let folds = pairs
            .iter()
            .map(|(a, b)| Ok((load_raw(a, cfg)?, load_raw(b, cfg)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        return Ok((name, folds));
    }
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("dataset")
        .to_string();
    let raw = load_raw(path, cfg)?;
    Ok((name, cv_folds(&raw, cfg.folds, cfg.seed)?))
}

pub fn experiment(settings: &Settings, output_dir: Option<PathBuf>) -> Result<(), CliError> {
    let mut cfg = resolve(settings)?;
    if let Some(dir) = output_dir {
        cfg.output_dir = dir;
    }
    cfg.validate(true)?;
    fs::create_dir_all(&cfg.output_dir)
        .map_err(|e| CliError::Usage(format!("{}: {e}", cfg.output_dir.display())))?;

    let mut report = MetricsReport {
        config: cfg.echo(),
        records: Vec::new(),
    };
    report.config.push(
        "conover_form",
        "classical: t = |R_i - R_j| / sqrt(2 (n A - sum R^2) / ((n-1)(k-1))), two-sided, unadjusted",
    );
    report.config.push("balanced_accuracy", "mean recall over classes present in the test fold");

    let mut failures = 0;
    for path in &cfg.datasets {
        let outcome = dataset_folds(path, &cfg)
            .and_then(|(name, folds)| Ok(run_cv(&name, &folds, &cfg.variants, &cfg.frri)?));
        match outcome {
            Ok(records) => {
                info!("{}: {} fold results", path.display(), records.len());
                report.records.extend(records);
            }
            Err(e) => {
                failures += 1;
                warn!("{}: skipped: {e}", path.display());
                eprintln!("dataset {} failed: {e}", path.display());
            }
        }
    }

    let dir = &cfg.output_dir;
    write(&dir.join("config.txt"), &cfg.to_text())?;
    write(&dir.join("folds.csv"), &report.to_csv()?)?;
    write(&dir.join("tables.md"), &report.markdown_tables())?;
    write(&dir.join("retention_curve.csv"), &report.retention_curve_csv())?;
    write(&dir.join("significance.md"), &report.significance_markdown()?)?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Internal(e.to_string()))?;
    write(&dir.join("report.json"), &(json + "\n"))?;
    println!("{}", report.markdown_tables());

    if failures > 0 {
        Err(CliError::Partial(failures))
    } else {
        Ok(())
    }
}
