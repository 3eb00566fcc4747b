//! Mutual information between a continuous attribute and the class, by the
//! k-nearest-neighbour estimator for mixed continuous/discrete pairs.

use log::warn;
use statrs::function::gamma::digamma;

use super::{AttributeOrder, RankingMethod};
use crate::data::DecisionSystem;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MI_NEIGHBORS: usize = 3;

/// Distance from `values[pos]` to its k-th nearest neighbour in the sorted
/// slice `values`, the point itself excluded.
fn kth_neighbor_distance(values: &[f64], pos: usize, k: usize) -> f64 {
    let x = values[pos];
    let (mut lo, mut hi) = (pos, pos + 1);
    let mut d = 0.0;
    for _ in 0..k {
        let left = if lo > 0 { Some(x - values[lo - 1]) } else { None };
        let right = values.get(hi).map(|&v| v - x);
        d = match (left, right) {
            (Some(l), Some(r)) if l <= r => {
                lo -= 1;
                l
            }
            (Some(l), None) => {
                lo -= 1;
                l
            }
            (_, Some(r)) => {
                hi += 1;
                r
            }
            (None, None) => unreachable!("k is below the class size"),
        };
    }
    d
}

/// Points of `sorted` strictly closer than `radius` to `x`; all exact ties
/// when `radius` is zero. Includes `x` itself.
fn count_within(sorted: &[f64], x: f64, radius: f64) -> usize {
    if radius > 0.0 {
        let lo = sorted.partition_point(|&v| v <= x - radius);
        let hi = sorted.partition_point(|&v| v < x + radius);
        hi - lo
    } else {
        sorted.partition_point(|&v| v <= x) - sorted.partition_point(|&v| v < x)
    }
}

/// kNN estimate of I(X; Y) for continuous `x` and class codes `y`, clipped at 0.
///
/// Objects whose class has a single member are ignored. No noise is added, so
/// the estimate is deterministic.
pub fn mutual_information_knn(x: &[f64], y: &[usize], k: usize) -> f64 {
    assert_eq!(x.len(), y.len());
    let num_classes = y.iter().copied().max().map_or(0, |c| c + 1);
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); num_classes];
    for (i, &c) in y.iter().enumerate() {
        by_class[c].push(i);
    }
    let mut radius = vec![0.0; x.len()];
    let mut k_used = vec![0usize; x.len()];
    let mut keep = vec![false; x.len()];
    for members in by_class.iter().filter(|m| m.len() > 1) {
        let kk = k.min(members.len() - 1);
        let mut sorted: Vec<(f64, usize)> = members.iter().map(|&i| (x[i], i)).collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let vals: Vec<f64> = sorted.iter().map(|p| p.0).collect();
        for (pos, &(_, i)) in sorted.iter().enumerate() {
            radius[i] = kth_neighbor_distance(&vals, pos, kk);
            k_used[i] = kk;
            keep[i] = true;
        }
    }
    let kept: Vec<usize> = (0..x.len()).filter(|&i| keep[i]).collect();
    let n = kept.len();
    if n == 0 {
        return 0.0;
    }
    let mut all_sorted: Vec<f64> = kept.iter().map(|&i| x[i]).collect();
    all_sorted.sort_by(f64::total_cmp);

    let nf = n as f64;
    let mut mean_k = 0.0;
    let mut mean_class = 0.0;
    let mut mean_m = 0.0;
    for &i in &kept {
        mean_k += digamma(k_used[i] as f64);
        mean_class += digamma(by_class[y[i]].len() as f64);
        mean_m += digamma(count_within(&all_sorted, x[i], radius[i]) as f64);
    }
    let mi = digamma(nf) + (mean_k - mean_class - mean_m) / nf;
    mi.max(0.0)
}

/// Ranks attributes by estimated mutual information with the class.
pub fn mi_scores<F: Scalar>(ds: &DecisionSystem<F>) -> Result<AttributeOrder<F>> {
    if ds.num_objects() < 2 {
        return Err(Error::InvalidArgument("mutual information needs at least 2 objects".into()));
    }
    let m = ds.num_attributes();
    let scores: Vec<F> = if ds.class_counts().iter().filter(|&&c| c > 0).count() < 2 {
        warn!("single decision class: all mutual information scores are 0");
        vec![F::zero(); m]
    } else {
        (0..m)
            .map(|a| {
                let col: Vec<f64> = ds.column(a).into_iter().map(Scalar::as_f64).collect();
                F::of(mutual_information_knn(&col, ds.labels(), MI_NEIGHBORS))
            })
            .collect()
    };
    Ok(AttributeOrder::from_scores(RankingMethod::Mi, &scores))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbor_distances() {
        let v = [0.0, 0.1, 0.3, 0.7, 1.0];
        assert!((kth_neighbor_distance(&v, 0, 1) - 0.1).abs() < 1e-12);
        assert!((kth_neighbor_distance(&v, 0, 3) - 0.7).abs() < 1e-12);
        assert!((kth_neighbor_distance(&v, 2, 2) - 0.3).abs() < 1e-12);
        assert_eq!(kth_neighbor_distance(&[0.5, 0.5, 0.5], 1, 2), 0.0);
    }

    #[test]
    fn counting() {
        let s = [0.0, 0.1, 0.2, 0.2, 0.5];
        assert_eq!(count_within(&s, 0.2, 0.1), 2);
        assert_eq!(count_within(&s, 0.2, 0.1 + 1e-9), 3);
        assert_eq!(count_within(&s, 0.2, 0.0), 2);
    }

    #[test]
    fn constant_attribute_has_no_information() {
        let x = vec![0.5; 12];
        let y: Vec<usize> = (0..12).map(|i| i % 2).collect();
        assert_eq!(mutual_information_knn(&x, &y, 3), 0.0);
    }

    #[test]
    fn affine_invariance() {
        let x: Vec<f64> = (0..30).map(|i| ((i * 7919) % 31) as f64).collect();
        let y: Vec<usize> = (0..30).map(|i| usize::from(x[i] > 12.0) + (i % 3 == 0) as usize).collect();
        let a = mutual_information_knn(&x, &y, 3);
        let scaled: Vec<f64> = x.iter().map(|v| 3.0 * v + 2.0).collect();
        assert!((mutual_information_knn(&scaled, &y, 3) - a).abs() < 1e-9);
    }

    #[test]
    fn single_class_scores_zero() {
        let ds = DecisionSystem::<f64>::from_normalized(
            vec![vec![0.0], vec![0.5], vec![1.0]],
            vec![0, 0, 0],
            vec!["a".into()],
        )
        .unwrap();
        assert_eq!(mi_scores(&ds).unwrap().scores.unwrap(), vec![0.0]);
    }
}
