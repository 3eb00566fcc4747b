use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ConditionKind, FrriConfig, Rule};
use crate::data::NormalizationParams;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which ranking and retention produced the attributes of a ruleset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RulesetSource {
    pub ranking: String,
    pub retention: String,
}

impl Default for RulesetSource {
    fn default() -> Self {
        RulesetSource {
            ranking: "identity".into(),
            retention: "1".into(),
        }
    }
}

/// A fitted classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ruleset<F> {
    pub attributes: Vec<String>,
    pub class_vocabulary: Vec<String>,
    /// Training objects per class, used to break ties.
    pub class_counts: Vec<usize>,
    pub theta: F,
    pub rules: Vec<Rule<F>>,
    /// Maps raw rows onto the attributes the rules are stated over.
    pub normalization: NormalizationParams<F>,
    pub config: FrriConfig<F>,
    /// Order in which conditions were shortened.
    pub order: Vec<usize>,
    pub source: RulesetSource,
    /// Number of shortened rules before selection.
    pub candidate_rules: usize,
    /// Whether the selection is a proven minimum.
    pub optimal: bool,
}

impl<F: Scalar> Ruleset<F> {
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn with_source(mut self, ranking: impl Into<String>, retention: impl Into<String>) -> Self {
        self.source = RulesetSource {
            ranking: ranking.into(),
            retention: retention.into(),
        };
        self
    }

    /// Average number of used conditions per rule.
    pub fn mean_rule_length(&self) -> Result<f64> {
        if self.rules.is_empty() {
            return Err(Error::EmptyRuleset);
        }
        Ok(self.rules.iter().map(|r| r.len() as f64).sum::<f64>() / self.rules.len() as f64)
    }

    /// Covering degree of every rule for a normalized row.
    pub fn covering_degrees(&self, row: &[F]) -> Result<Vec<F>> {
        let scale = self.config.fuzzy.similarity_scale;
        self.rules.iter().map(|r| r.covering_membership(row, scale)).collect()
    }

    fn prior(&self, class: usize) -> usize {
        self.class_counts.get(class).copied().unwrap_or(0)
    }

    /// Class of the rule with the highest covering degree for a normalized
    /// row. Ties go to the class with more training objects, then to the
    /// class listed first in the vocabulary.
    pub fn classify(&self, row: &[F]) -> Result<usize> {
        if self.rules.is_empty() {
            return Err(Error::EmptyRuleset);
        }
        let degrees = self.covering_degrees(row)?;
        let mut best = (degrees[0], self.rules[0].class);
        for (r, &d) in self.rules.iter().zip(&degrees).skip(1) {
            let (bd, bc) = best;
            let better = d > bd
                || (d == bd
                    && (self.prior(r.class) > self.prior(bc)
                        || (self.prior(r.class) == self.prior(bc) && r.class < bc)));
            if better {
                best = (d, r.class);
            }
        }
        Ok(best.1)
    }

    /// Normalizes a row in the layout of the training file, clamping values
    /// outside the training range, and classifies it.
    pub fn classify_raw(&self, raw_row: &[f64]) -> Result<usize> {
        let row = self.normalization.transform_raw(raw_row)?;
        self.classify(&row)
    }

    pub fn class_name(&self, class: usize) -> &str {
        &self.class_vocabulary[class]
    }

    pub fn to_json(&self) -> Result<String>
    where
        F: Serialize,
    {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self>
    where
        F: for<'de> Deserialize<'de>,
    {
        let rs: Ruleset<F> = serde_json::from_str(text)?;
        rs.validate()?;
        Ok(rs)
    }

    /// Structural checks on a deserialized ruleset.
    pub fn validate(&self) -> Result<()> {
        let m = self.attributes.len();
        if self.normalization.num_attributes() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: self.normalization.num_attributes(),
                context: "normalization vs attributes",
            });
        }
        for r in &self.rules {
            if r.anchors.len() != m || r.kinds.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: r.anchors.len().min(r.kinds.len()),
                    context: "rule arity",
                });
            }
            if r.class >= self.class_vocabulary.len() {
                return Err(Error::InvalidArgument(format!("rule class {} outside vocabulary", r.class)));
            }
            let unit = |v: F| v >= F::zero() && v <= F::one();
            if !unit(r.consequent_degree) || !r.anchors.iter().all(|&a| unit(a)) {
                return Err(Error::DegreeOutOfRange {
                    value: r.consequent_degree.as_f64(),
                    context: "rule anchors or consequent degree",
                });
            }
        }
        Ok(())
    }

    /// One rule as text, anchors in original units.
    pub fn render_rule(&self, rule: &Rule<F>) -> String {
        let mut conds = Vec::new();
        for (a, (&kind, &anchor)) in rule.kinds.iter().zip(&rule.anchors).enumerate() {
            let v = self.normalization.denormalize(a, anchor).as_f64();
            let name = &self.attributes[a];
            let op = match kind {
                ConditionKind::Unused => continue,
                ConditionKind::Similar => "~",
                ConditionKind::Dominant => "<=",
                ConditionKind::Dominated => ">=",
            };
            conds.push(format!("{name} {op} {}", trim_float(v)));
        }
        let antecedent = if conds.is_empty() { "TRUE".to_string() } else { conds.join(" AND ") };
        format!(
            "IF {antecedent} THEN class = {} [{:.4}]",
            self.class_vocabulary[rule.class],
            rule.consequent_degree.as_f64()
        )
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.rules.iter().enumerate() {
            let _ = writeln!(out, "{:>4}: {}", i + 1, self.render_rule(r));
        }
        out
    }
}

fn trim_float(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}
