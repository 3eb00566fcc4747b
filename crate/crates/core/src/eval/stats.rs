use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal, StudentsT};

use crate::error::{Error, Result};

/// Significance level.
pub const ALPHA: f64 = 0.05;
/// Upper end of the "weakly significant" band `(ALPHA, WEAK_ALPHA]`.
pub const WEAK_ALPHA: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alternative {
    TwoSided,
    /// First sample tends to be larger.
    Greater,
    Less,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Significance {
    Significant,
    Weak,
    NotSignificant,
}

pub fn significance(p: f64) -> Significance {
    if p <= ALPHA {
        Significance::Significant
    } else if p <= WEAK_ALPHA {
        Significance::Weak
    } else {
        Significance::NotSignificant
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub alternative: Alternative,
    /// Average within-row rank of each column, 1 = best (Friedman only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mean_ranks: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseResult {
    /// Column-by-column t statistics, symmetric.
    pub statistics: Vec<Vec<f64>>,
    /// Column-by-column two-sided p-values, symmetric, 1 on the diagonal.
    pub p_values: Vec<Vec<f64>>,
    pub degrees_of_freedom: f64,
}

/// Ranks with ties sharing their mean rank, 1-based, smallest value first.
fn mean_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &t in &idx[i..=j] {
            ranks[t] = r;
        }
        i = j + 1;
    }
    ranks
}

fn tie_sizes(values: &[f64]) -> Vec<usize> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mut out = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let j = v[i..].iter().take_while(|&&x| x == v[i]).count();
        out.push(j);
        i += j;
    }
    out
}

struct RankTable {
    n: usize,
    k: usize,
    /// Per-row ranks, higher score gets the higher rank.
    ranks: Vec<Vec<f64>>,
    col_sums: Vec<f64>,
}

fn rank_table(scores: &[Vec<f64>]) -> Result<RankTable> {
    let n = scores.len();
    let k = scores.first().map_or(0, Vec::len);
    if n < 2 || k < 2 {
        return Err(Error::InvalidArgument(format!(
            "rank tests need at least 2 rows and 2 columns, got {n}x{k}"
        )));
    }
    if let Some(row) = scores.iter().find(|r| r.len() != k) {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: row.len(),
            context: "score matrix row",
        });
    }
    if scores.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("score matrix has non-finite entries".into()));
    }
    let ranks: Vec<Vec<f64>> = scores.iter().map(|r| mean_ranks(r)).collect();
    let col_sums = (0..k).map(|j| ranks.iter().map(|r| r[j]).sum()).collect();
    Ok(RankTable { n, k, ranks, col_sums })
}

/// Friedman test on a datasets-by-variants score matrix, with the usual tie
/// correction. Fully tied matrices give statistic 0 and p = 1.
pub fn friedman_test(scores: &[Vec<f64>]) -> Result<TestResult> {
    let t = rank_table(scores)?;
    let (n, k) = (t.n as f64, t.k as f64);
    let ss: f64 = t.col_sums.iter().map(|r| r * r).sum();
    let raw = 12.0 / (n * k * (k + 1.0)) * ss - 3.0 * n * (k + 1.0);
    let ties: f64 = scores
        .iter()
        .flat_map(|r| tie_sizes(r))
        .map(|s| (s * s * s - s) as f64)
        .sum();
    let correction = 1.0 - ties / (n * k * (k * k - 1.0));
    let (statistic, p_value) = if correction <= 1e-12 {
        (0.0, 1.0)
    } else {
        let stat = (raw / correction).max(0.0);
        let chi = ChiSquared::new(k - 1.0).expect("k >= 2");
        (stat, chi.sf(stat).clamp(0.0, 1.0))
    };
    Ok(TestResult {
        statistic,
        p_value,
        alternative: Alternative::TwoSided,
        mean_ranks: Some(t.col_sums.iter().map(|r| k + 1.0 - r / n).collect()),
    })
}

/// Conover's pairwise comparisons after a Friedman test, classical form:
/// `t = |R_i - R_j| / sqrt(2 (n A - sum R^2) / ((n - 1)(k - 1)))` with
/// `A` the sum of squared within-row ranks and `R` the column rank sums.
pub fn conover_posthoc(scores: &[Vec<f64>]) -> Result<PairwiseResult> {
    let t = rank_table(scores)?;
    let (n, k) = (t.n as f64, t.k as f64);
    let a: f64 = t.ranks.iter().flatten().map(|r| r * r).sum();
    let ss: f64 = t.col_sums.iter().map(|r| r * r).sum();
    let df = (n - 1.0) * (k - 1.0);
    let denom = (2.0 * (n * a - ss) / df).max(0.0).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).expect("df > 0");
    let mut statistics = vec![vec![0.0; t.k]; t.k];
    let mut p_values = vec![vec![1.0; t.k]; t.k];
    for i in 0..t.k {
        for j in (i + 1)..t.k {
            let diff = (t.col_sums[i] - t.col_sums[j]).abs();
            let (s, p) = if denom <= 1e-12 {
                (0.0, 1.0)
            } else {
                let s = diff / denom;
                (s, (2.0 * dist.sf(s)).clamp(0.0, 1.0))
            };
            statistics[i][j] = s;
            statistics[j][i] = s;
            p_values[i][j] = p;
            p_values[j][i] = p;
        }
    }
    Ok(PairwiseResult {
        statistics,
        p_values,
        degrees_of_freedom: df,
    })
}

/// Largest sample size for which the exact null distribution is used.
const EXACT_LIMIT: usize = 25;

/// Wilcoxon signed-rank test on paired samples. Zero differences are
/// dropped, tied magnitudes share mean ranks. The statistic is the sum of
/// ranks of positive differences `x - y`.
pub fn wilcoxon_signed_rank(x: &[f64], y: &[f64], alternative: Alternative) -> Result<TestResult> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
            context: "paired samples",
        });
    }
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).filter(|&v| v != 0.0).collect();
    if d.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite paired difference".into()));
    }
    let n = d.len();
    if n == 0 {
        return Ok(TestResult {
            statistic: 0.0,
            p_value: 1.0,
            alternative,
            mean_ranks: None,
        });
    }
    let ranks = mean_ranks(&d.iter().map(|v| v.abs()).collect::<Vec<_>>());
    let w_plus: f64 = ranks.iter().zip(&d).filter(|(_, &v)| v > 0.0).map(|(r, _)| r).sum();

    let (p_greater, p_less) = if n <= EXACT_LIMIT {
        exact_tails(&ranks, w_plus)
    } else {
        normal_tails(&ranks, w_plus)
    };
    let p_value = match alternative {
        Alternative::Greater => p_greater,
        Alternative::Less => p_less,
        Alternative::TwoSided => 2.0 * p_greater.min(p_less),
    };
    Ok(TestResult {
        statistic: w_plus,
        p_value: p_value.clamp(0.0, 1.0),
        alternative,
        mean_ranks: None,
    })
}

/// `P(W+ >= w)` and `P(W+ <= w)` under random signs, by counting subsets of
/// the (doubled, hence integral) ranks.
fn exact_tails(ranks: &[f64], w_plus: f64) -> (f64, f64) {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0.0f64; total + 1];
    counts[0] = 1.0;
    for &r in &doubled {
        for s in (r..=total).rev() {
            counts[s] += counts[s - r];
        }
    }
    let all = 2f64.powi(ranks.len() as i32);
    let w = (2.0 * w_plus).round() as usize;
    let upper: f64 = counts[w..].iter().sum();
    let lower: f64 = counts[..=w].iter().sum();
    (upper / all, lower / all)
}

fn normal_tails(ranks: &[f64], w_plus: f64) -> (f64, f64) {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let ties: f64 = tie_sizes(ranks).iter().map(|&t| (t * t * t - t) as f64).sum();
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - ties / 48.0;
    if var <= 0.0 {
        return (1.0, 1.0);
    }
    let sd = var.sqrt();
    let z = Normal::new(0.0, 1.0).expect("unit normal");
    let upper = z.sf((w_plus - mean - 0.5) / sd);
    let lower = z.cdf((w_plus - mean + 0.5) / sd);
    (upper, lower)
}
