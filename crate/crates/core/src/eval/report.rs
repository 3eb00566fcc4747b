use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::stats::{conover_posthoc, friedman_test, significance, wilcoxon_signed_rank, Alternative, ALPHA, WEAK_ALPHA};
use super::{FoldRecord, Variant};
use crate::error::{Error, Result};

/// Resolved settings echoed into every report, as ordered key/value pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub entries: Vec<(String, String)>,
}

impl ReportConfig {
    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }
}

/// Means over folds for one dataset and variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub dataset: String,
    pub variant: String,
    pub folds: usize,
    pub balanced_accuracy: f64,
    pub rule_count: f64,
    pub mean_rule_length: f64,
    pub retained_attributes: f64,
    pub all_optimal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    BalancedAccuracy,
    RuleCount,
    RuleLength,
}

impl Metric {
    fn of(self, row: &AggregateRow) -> f64 {
        match self {
            Metric::BalancedAccuracy => row.balanced_accuracy,
            Metric::RuleCount => row.rule_count,
            Metric::RuleLength => row.mean_rule_length,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub config: ReportConfig,
    pub records: Vec<FoldRecord>,
}

fn first_seen<'a>(items: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for s in items {
        if !out.iter().any(|o| o == s) {
            out.push(s.to_string());
        }
    }
    out
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (s, c) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    if c == 0 {
        f64::NAN
    } else {
        s / c as f64
    }
}

impl MetricsReport {
    pub fn datasets(&self) -> Vec<String> {
        first_seen(self.records.iter().map(|r| r.dataset.as_str()))
    }

    pub fn variants(&self) -> Vec<String> {
        first_seen(self.records.iter().map(|r| r.variant.as_str()))
    }

    pub fn aggregate(&self) -> Vec<AggregateRow> {
        let mut rows = Vec::new();
        for d in self.datasets() {
            for v in self.variants() {
                let recs: Vec<&FoldRecord> =
                    self.records.iter().filter(|r| r.dataset == d && r.variant == v).collect();
                if recs.is_empty() {
                    continue;
                }
                rows.push(AggregateRow {
                    dataset: d.clone(),
                    variant: v.clone(),
                    folds: recs.len(),
                    balanced_accuracy: mean(recs.iter().map(|r| r.balanced_accuracy)),
                    rule_count: mean(recs.iter().map(|r| r.rule_count as f64)),
                    mean_rule_length: mean(recs.iter().map(|r| r.mean_rule_length)),
                    retained_attributes: mean(recs.iter().map(|r| r.retained_attributes as f64)),
                    all_optimal: recs.iter().all(|r| r.optimal),
                });
            }
        }
        rows
    }

    /// Per-dataset means of `metric`, datasets by variants. Only datasets
    /// with a result for every variant are included.
    pub fn score_matrix(&self, metric: Metric) -> (Vec<String>, Vec<String>, Vec<Vec<f64>>) {
        let agg = self.aggregate();
        let variants = self.variants();
        let mut names = Vec::new();
        let mut matrix = Vec::new();
        for d in self.datasets() {
            let row: Option<Vec<f64>> = variants
                .iter()
                .map(|v| agg.iter().find(|a| a.dataset == d && &a.variant == v).map(|a| metric.of(a)))
                .collect();
            if let Some(row) = row {
                names.push(d);
                matrix.push(row);
            }
        }
        (names, variants, matrix)
    }

    fn config_comment(&self, prefix: &str) -> String {
        let mut out = String::new();
        for (k, v) in &self.config.entries {
            let _ = writeln!(out, "{prefix}{k} = {v}");
        }
        out
    }

    /// One row per dataset, variant and fold, preceded by `#` config lines.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(r).map_err(|e| Error::Serde(e.to_string()))?;
        }
        let body = String::from_utf8(w.into_inner().map_err(|e| Error::Serde(e.to_string()))?)
            .map_err(|e| Error::Serde(e.to_string()))?;
        Ok(self.config_comment("# ") + &body)
    }

    fn table(&self, title: &str, metric: Metric, decimals: usize) -> String {
        let agg = self.aggregate();
        let variants = self.variants();
        let mut out = format!("### {title}\n\n| dataset |");
        for v in &variants {
            let _ = write!(out, " {v} |");
        }
        out.push_str("\n|---|");
        out.push_str(&"---:|".repeat(variants.len()));
        out.push('\n');
        for d in self.datasets() {
            let _ = write!(out, "| {d} |");
            for v in &variants {
                match agg.iter().find(|a| a.dataset == d && &a.variant == v) {
                    Some(a) => {
                        let flag = if metric == Metric::RuleCount && !a.all_optimal { "*" } else { "" };
                        let _ = write!(out, " {:.*}{flag} |", decimals, metric.of(a));
                    }
                    None => out.push_str(" - |"),
                }
            }
            out.push('\n');
        }
        out.push_str("| **mean** |");
        for v in &variants {
            let m = mean(agg.iter().filter(|a| &a.variant == v).map(|a| metric.of(a)));
            let _ = write!(out, " {:.*} |", decimals, m);
        }
        out.push('\n');
        out
    }

    /// Balanced accuracy, rule count and rule length tables.
    pub fn markdown_tables(&self) -> String {
        let mut out = String::from("## Results\n\nResolved configuration:\n\n```\n");
        out.push_str(&self.config_comment(""));
        out.push_str("```\n\n");
        out.push_str(&self.table("Average balanced accuracy", Metric::BalancedAccuracy, 3));
        out.push('\n');
        out.push_str(&self.table("Average number of rules", Metric::RuleCount, 1));
        out.push_str("\n`*` marks a dataset where some fold's rule selection was not proven minimal.\n\n");
        out.push_str(&self.table("Average rule length", Metric::RuleLength, 2));
        out
    }

    /// Mean balanced accuracy over datasets for each fractional retention
    /// level of `method`, most attributes first. Superreduct cuts are left
    /// out since they have no fixed fraction.
    pub fn retention_curve(&self, method: &str) -> Vec<(String, f64)> {
        let (_, variants, matrix) = self.score_matrix(Metric::BalancedAccuracy);
        let mut points: Vec<(f64, String, f64)> = variants
            .iter()
            .enumerate()
            .filter_map(|(j, name)| {
                let v: Variant = name.parse().ok()?;
                if v.method.to_string() != method {
                    return None;
                }
                let level = match v.policy {
                    crate::ranking::RetentionPolicy::Full => 1.0,
                    crate::ranking::RetentionPolicy::Fraction(x) => f64::from(x) / 10.0,
                    crate::ranking::RetentionPolicy::Superreduct => return None,
                };
                Some((level, v.policy.to_string(), mean(matrix.iter().map(|r| r[j]))))
            })
            .collect();
        points.sort_by(|a, b| b.0.total_cmp(&a.0));
        points.into_iter().map(|(_, p, m)| (p, m)).collect()
    }

    /// Plot-ready retention curve for every ranking method present.
    pub fn retention_curve_csv(&self) -> String {
        let mut out = self.config_comment("# ");
        out.push_str("method,retention,mean_balanced_accuracy,datasets\n");
        let datasets = self.score_matrix(Metric::BalancedAccuracy).0.len();
        let mut methods: Vec<String> = Vec::new();
        for v in self.variants() {
            if let Ok(v) = v.parse::<Variant>() {
                let m = v.method.to_string();
                if !v.is_control() && !methods.contains(&m) {
                    methods.push(m);
                }
            }
        }
        for m in methods {
            for (p, acc) in self.retention_curve(&m) {
                let _ = writeln!(out, "{m},{p},{acc},{datasets}");
            }
        }
        out
    }

    /// Friedman test over all variants, Conover post-hoc pairs and Wilcoxon
    /// tests of each variant against `control`, on per-dataset mean balanced
    /// accuracy.
    pub fn significance_markdown(&self) -> Result<String> {
        let (datasets, variants, m) = self.score_matrix(Metric::BalancedAccuracy);
        let mut out = String::from("## Significance\n\n");
        let _ = writeln!(
            out,
            "Scores: per-dataset mean balanced accuracy over folds ({} datasets). alpha = {ALPHA}, weakly significant band ({ALPHA}, {WEAK_ALPHA}].",
            datasets.len()
        );
        out.push_str("Post-hoc: Conover pairwise t-tests in the classical form, t = |R_i - R_j| / sqrt(2 (n A - sum R^2) / ((n - 1)(k - 1))), df = (n - 1)(k - 1), two-sided, no p-value adjustment.\n\n");
        if datasets.len() < 2 || variants.len() < 2 {
            out.push_str("Not enough datasets or variants for the tests.\n");
            return Ok(out);
        }
        let f = friedman_test(&m)?;
        let _ = writeln!(
            out,
            "Friedman: statistic = {:.4}, p = {:.4e} ({:?})\n",
            f.statistic,
            f.p_value,
            significance(f.p_value)
        );
        out.push_str("| variant | mean rank |\n|---|---:|\n");
        for (v, r) in variants.iter().zip(f.mean_ranks.as_deref().unwrap_or(&[])) {
            let _ = writeln!(out, "| {v} | {r:.3} |");
        }
        let c = conover_posthoc(&m)?;
        out.push_str("\nConover p-values:\n\n| |");
        for v in &variants {
            let _ = write!(out, " {v} |");
        }
        out.push_str("\n|---|");
        out.push_str(&"---:|".repeat(variants.len()));
        out.push('\n');
        for (i, v) in variants.iter().enumerate() {
            let _ = write!(out, "| {v} |");
            for j in 0..variants.len() {
                let _ = write!(out, " {:.4} |", c.p_values[i][j]);
            }
            out.push('\n');
        }
        if let Some(ci) = variants.iter().position(|v| v == "control") {
            out.push_str("\nWilcoxon signed-rank against control:\n\n| variant | W+ | p (two-sided) | p (greater) | p (less) |\n|---|---:|---:|---:|---:|\n");
            let control: Vec<f64> = m.iter().map(|r| r[ci]).collect();
            for (j, v) in variants.iter().enumerate().filter(|&(j, _)| j != ci) {
                let x: Vec<f64> = m.iter().map(|r| r[j]).collect();
                let two = wilcoxon_signed_rank(&x, &control, Alternative::TwoSided)?;
                let gt = wilcoxon_signed_rank(&x, &control, Alternative::Greater)?;
                let lt = wilcoxon_signed_rank(&x, &control, Alternative::Less)?;
                let _ = writeln!(
                    out,
                    "| {v} | {:.1} | {:.4} | {:.4} | {:.4} |",
                    two.statistic, two.p_value, gt.p_value, lt.p_value
                );
            }
        }
        Ok(out)
    }
}
