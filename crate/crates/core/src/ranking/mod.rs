//! Attribute orderings and the retention policies that truncate them.

mod mi;
mod pcc;
mod quickreduct;

pub use mi::{mi_scores, mutual_information_knn, MI_NEIGHBORS};
pub use pcc::{pcc_scores, pearson};
pub use quickreduct::quickreduct_ordered;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data::DecisionSystem;
use crate::error::{Error, Result};
use crate::fuzzy::FuzzyParams;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankingMethod {
    /// Original attribute order.
    Identity,
    /// Order of selection in QuickReduct, unselected attributes appended.
    Ofrfs,
    Mi,
    Pcc,
}

impl fmt::Display for RankingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankingMethod::Identity => "identity",
            RankingMethod::Ofrfs => "ofrfs",
            RankingMethod::Mi => "mi",
            RankingMethod::Pcc => "pcc",
        })
    }
}

impl FromStr for RankingMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "identity" | "none" => Ok(RankingMethod::Identity),
            "ofrfs" => Ok(RankingMethod::Ofrfs),
            "mi" => Ok(RankingMethod::Mi),
            "pcc" => Ok(RankingMethod::Pcc),
            other => Err(Error::InvalidArgument(format!("unknown ranking method `{other}`"))),
        }
    }
}

/// Ranked attribute list, most important first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeOrder<F> {
    pub method: RankingMethod,
    #[serde(rename = "ranked_attributes")]
    pub ranked_indices: Vec<usize>,
    /// Score of each ranked attribute, aligned with `ranked_indices`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scores: Option<Vec<F>>,
    /// Dependency degree after each greedy QuickReduct addition.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma_trace: Option<Vec<F>>,
    /// Number of leading attributes that form the QuickReduct superreduct.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub superreduct_size: Option<usize>,
}

impl<F: Scalar> AttributeOrder<F> {
    pub fn identity(num_attributes: usize) -> Self {
        AttributeOrder {
            method: RankingMethod::Identity,
            ranked_indices: (0..num_attributes).collect(),
            scores: None,
            gamma_trace: None,
            superreduct_size: None,
        }
    }

    /// Sorts attributes by descending score, ties by ascending index.
    pub(crate) fn from_scores(method: RankingMethod, scores: &[F]) -> Self {
        let mut idx: Vec<usize> = (0..scores.len()).collect();
        idx.sort_by(|&a, &b| {
            scores[b]
                .partial_cmp(&scores[a])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        AttributeOrder {
            method,
            scores: Some(idx.iter().map(|&i| scores[i]).collect()),
            ranked_indices: idx,
            gamma_trace: None,
            superreduct_size: None,
        }
    }
}

/// Builds the ordering for `method` on a training system.
pub fn rank<F: Scalar>(
    ds: &DecisionSystem<F>,
    method: RankingMethod,
    params: &FuzzyParams<F>,
) -> Result<AttributeOrder<F>> {
    match method {
        RankingMethod::Identity => Ok(AttributeOrder::identity(ds.num_attributes())),
        RankingMethod::Ofrfs => quickreduct_ordered(ds, params),
        RankingMethod::Mi => mi_scores(ds),
        RankingMethod::Pcc => pcc_scores(ds),
    }
}

/// How much of a ranked order to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RetentionPolicy {
    /// Keep every attribute, only reorder.
    Full,
    /// Keep `floor(x / 10 * |A|)` attributes, `x` in 1..=9.
    Fraction(u8),
    /// Cut an ofrfs order at the QuickReduct stop.
    Superreduct,
}

impl RetentionPolicy {
    pub fn fraction(tenths: u8) -> Result<Self> {
        if (1..=9).contains(&tenths) {
            Ok(RetentionPolicy::Fraction(tenths))
        } else {
            Err(Error::InvalidArgument(format!(
                "retention fraction must be 0.1..0.9, got {}",
                f64::from(tenths) / 10.0
            )))
        }
    }
}

impl fmt::Display for RetentionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RetentionPolicy::Full => f.write_str("1"),
            RetentionPolicy::Fraction(x) => write!(f, "0.{x}"),
            RetentionPolicy::Superreduct => f.write_str("0"),
        }
    }
}

impl FromStr for RetentionPolicy {
    type Err = Error;

    /// Accepts `1`/`full`, `0`/`superreduct`, and `0.x` or `.x` for x in 1..9.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "1" | "1.0" | "full" => return Ok(RetentionPolicy::Full),
            "0" | "superreduct" => return Ok(RetentionPolicy::Superreduct),
            _ => {}
        }
        let digits = t.strip_prefix("0.").or_else(|| t.strip_prefix('.'));
        match digits.map(|d| d.trim_end_matches('0')) {
            Some(d) if d.len() == 1 => RetentionPolicy::fraction(d.as_bytes()[0].wrapping_sub(b'0')),
            _ => Err(Error::InvalidArgument(format!("unknown retention policy `{s}`"))),
        }
    }
}

/// Number of attributes kept by fraction `tenths` of `total`. Counts of 0 or
/// 1 escalate to the smallest larger fraction keeping at least two.
pub fn retained_count(tenths: u8, total: usize) -> usize {
    let count = |x: usize| x * total / 10;
    let mut x = usize::from(tenths);
    while count(x) <= 1 && x < 10 {
        x += 1;
    }
    count(x).min(total)
}

/// Truncates `order` according to `policy`. The result is always a prefix.
pub fn apply_policy<F: Scalar>(
    order: &AttributeOrder<F>,
    policy: RetentionPolicy,
    total_attributes: usize,
) -> Result<Vec<usize>> {
    let ranked = &order.ranked_indices;
    let keep = match policy {
        RetentionPolicy::Full => ranked.len(),
        RetentionPolicy::Fraction(x) => {
            if ranked.len() != total_attributes {
                return Err(Error::InvalidArgument(format!(
                    "order covers {} of {total_attributes} attributes",
                    ranked.len()
                )));
            }
            retained_count(x, total_attributes)
        }
        RetentionPolicy::Superreduct => match (order.method, order.superreduct_size) {
            (RankingMethod::Ofrfs, Some(s)) => s,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "superreduct retention needs an ofrfs order, got {}",
                    order.method
                )))
            }
        },
    };
    Ok(ranked[..keep.min(ranked.len())].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_counts() {
        assert_eq!(retained_count(9, 14), 12);
        assert_eq!(retained_count(8, 13), 10);
        // floor(0.6) = 0, escalate to x = 4: floor(2.4) = 2
        assert_eq!(retained_count(1, 6), 2);
        assert_eq!(retained_count(1, 1), 1);
        assert_eq!(retained_count(5, 2), 2);
    }

    #[test]
    fn policy_prefixes() {
        let order = AttributeOrder::<f64> {
            method: RankingMethod::Pcc,
            ranked_indices: vec![3, 1, 0, 2, 5, 4],
            scores: None,
            gamma_trace: None,
            superreduct_size: None,
        };
        assert_eq!(apply_policy(&order, RetentionPolicy::Full, 6).unwrap(), order.ranked_indices);
        assert_eq!(apply_policy(&order, RetentionPolicy::Fraction(1), 6).unwrap(), vec![3, 1]);
        assert_eq!(apply_policy(&order, RetentionPolicy::Fraction(9), 6).unwrap(), vec![3, 1, 0, 2, 5]);
        assert!(apply_policy(&order, RetentionPolicy::Superreduct, 6).is_err());
        let of = AttributeOrder {
            method: RankingMethod::Ofrfs,
            superreduct_size: Some(2),
            ..order
        };
        assert_eq!(apply_policy(&of, RetentionPolicy::Superreduct, 6).unwrap(), vec![3, 1]);
    }

    #[test]
    fn policy_parsing() {
        assert_eq!("1".parse::<RetentionPolicy>().unwrap(), RetentionPolicy::Full);
        assert_eq!("full".parse::<RetentionPolicy>().unwrap(), RetentionPolicy::Full);
        assert_eq!("0".parse::<RetentionPolicy>().unwrap(), RetentionPolicy::Superreduct);
        assert_eq!("0.9".parse::<RetentionPolicy>().unwrap(), RetentionPolicy::Fraction(9));
        assert_eq!(".8".parse::<RetentionPolicy>().unwrap(), RetentionPolicy::Fraction(8));
        assert_eq!("0.30".parse::<RetentionPolicy>().unwrap(), RetentionPolicy::Fraction(3));
        assert!("0.95".parse::<RetentionPolicy>().is_err());
        assert!("2".parse::<RetentionPolicy>().is_err());
        for p in [RetentionPolicy::Full, RetentionPolicy::Superreduct, RetentionPolicy::Fraction(4)] {
            assert_eq!(p.to_string().parse::<RetentionPolicy>().unwrap(), p);
        }
    }

    #[test]
    fn score_sort_breaks_ties_by_index() {
        let o = AttributeOrder::from_scores(RankingMethod::Mi, &[0.1, 0.5, 0.1, 0.5]);
        assert_eq!(o.ranked_indices, vec![1, 3, 0, 2]);
        assert_eq!(o.scores.unwrap(), vec![0.5, 0.5, 0.1, 0.1]);
    }
}
