//! Rule induction: total rules, greedy shortening along an attribute order,
//! rule selection by minimum set cover, and classification.

mod induce;
mod ruleset;

pub use induce::{
    consequent_degrees, coverage_matrix, fit, is_consistent, rule_prune, select_rules, shorten_all,
    total_rule, CoverInstance,
};
pub use ruleset::{Ruleset, RulesetSource};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{dominance_scaled, indiscernibility_scaled, FuzzyParams};
use crate::scalar::Scalar;
use crate::setcover::DEFAULT_NODE_BUDGET;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConditionKind {
    Unused,
    Similar,
    /// Satisfied by values at or below the anchor.
    Dominant,
    /// Satisfied by values at or above the anchor.
    Dominated,
}

impl ConditionKind {
    /// Order in which shortening tries the kinds.
    pub const TRIAL_ORDER: [ConditionKind; 4] = [
        ConditionKind::Unused,
        ConditionKind::Dominant,
        ConditionKind::Dominated,
        ConditionKind::Similar,
    ];

    /// Degree to which `value` satisfies the condition anchored at `anchor`.
    #[inline]
    pub fn degree<F: Scalar>(self, anchor: F, value: F, scale: F) -> F {
        match self {
            ConditionKind::Unused => F::one(),
            ConditionKind::Similar => indiscernibility_scaled(anchor, value, scale),
            ConditionKind::Dominant => dominance_scaled(anchor, value, scale),
            ConditionKind::Dominated => dominance_scaled(value, anchor, scale),
        }
    }
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionKind::Unused => "UNUSED",
            ConditionKind::Similar => "SIMILAR",
            ConditionKind::Dominant => "DOMINANT",
            ConditionKind::Dominated => "DOMINATED",
        })
    }
}

/// One IF-THEN rule derived from a training object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rule<F> {
    /// Index of the training object the rule came from.
    pub generator: usize,
    pub kinds: Vec<ConditionKind>,
    /// Normalized attribute values of the generator.
    pub anchors: Vec<F>,
    /// Index into the class vocabulary.
    pub class: usize,
    pub consequent_degree: F,
}

impl<F: Scalar> Rule<F> {
    /// Number of conditions that are not `UNUSED`.
    pub fn len(&self) -> usize {
        self.kinds.iter().filter(|&&k| k != ConditionKind::Unused).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn check_arity(&self, row: &[F]) -> Result<()> {
        if row.len() != self.anchors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.anchors.len(),
                found: row.len(),
                context: "row evaluated against rule",
            });
        }
        Ok(())
    }

    /// Minimum of the per-condition degrees; `UNUSED` contributes 1.
    pub fn matching_degree(&self, row: &[F], scale: F) -> Result<F> {
        self.check_arity(row)?;
        Ok(self.matching_unchecked(row, scale))
    }

    #[inline]
    pub(crate) fn matching_unchecked(&self, row: &[F], scale: F) -> F {
        let mut m = F::one();
        for ((&k, &a), &v) in self.kinds.iter().zip(&self.anchors).zip(row) {
            m = m.min(k.degree(a, v, scale));
            if m <= F::zero() {
                break;
            }
        }
        m
    }

    /// `min(matching degree, consequent degree)`.
    pub fn covering_membership(&self, row: &[F], scale: F) -> Result<F> {
        Ok(self.matching_degree(row, scale)?.min(self.consequent_degree))
    }

    #[inline]
    pub(crate) fn covering_unchecked(&self, row: &[F], scale: F) -> F {
        self.matching_unchecked(row, scale).min(self.consequent_degree)
    }
}

/// Induction parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrriConfig<F> {
    pub fuzzy: FuzzyParams<F>,
    /// Slack allowed in the subset test used for consistency.
    pub consistency_tolerance: F,
    /// A rule covers an object when its covering degree reaches this level.
    pub coverage_threshold: F,
    /// Branch-and-bound node limit for rule selection.
    pub node_budget: u64,
}

impl<F: Scalar> Default for FrriConfig<F> {
    fn default() -> Self {
        FrriConfig {
            fuzzy: FuzzyParams::default(),
            consistency_tolerance: F::zero(),
            coverage_threshold: F::of(0.5),
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl<F: Scalar> FrriConfig<F> {
    pub fn validate(&self) -> Result<()> {
        self.fuzzy.validate()?;
        let (e, t) = (self.consistency_tolerance, self.coverage_threshold);
        if !(e >= F::zero() && e < F::one()) {
            return Err(Error::InvalidArgument(format!(
                "consistency tolerance must be in [0, 1), got {e}"
            )));
        }
        if !(t > F::zero() && t <= F::one()) {
            return Err(Error::InvalidArgument(format!(
                "coverage threshold must be in (0, 1], got {t}"
            )));
        }
        Ok(())
    }
}

impl FromStr for ConditionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "UNUSED" => Ok(ConditionKind::Unused),
            "SIMILAR" => Ok(ConditionKind::Similar),
            "DOMINANT" => Ok(ConditionKind::Dominant),
            "DOMINATED" => Ok(ConditionKind::Dominated),
            other => Err(Error::InvalidArgument(format!("unknown condition kind `{other}`"))),
        }
    }
}
