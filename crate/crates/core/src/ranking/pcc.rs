use log::warn;

use super::{AttributeOrder, RankingMethod};
use crate::data::DecisionSystem;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sample Pearson correlation; 0 when either side has zero variance.
pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        0.0
    } else {
        sxy / (sxx.sqrt() * syy.sqrt())
    }
}

/// Ranks attributes by absolute correlation with the class code (the class
/// index in order of first appearance).
pub fn pcc_scores<F: Scalar>(ds: &DecisionSystem<F>) -> Result<AttributeOrder<F>> {
    if ds.num_objects() < 2 {
        return Err(Error::InvalidArgument("correlation needs at least 2 objects".into()));
    }
    let codes: Vec<f64> = ds.labels().iter().map(|&c| c as f64).collect();
    if codes.iter().all(|&c| c == codes[0]) {
        warn!("single decision class: all correlation scores are 0");
    }
    let scores: Vec<F> = (0..ds.num_attributes())
        .map(|a| {
            let col: Vec<f64> = ds.column(a).into_iter().map(Scalar::as_f64).collect();
            F::of(pearson(&col, &codes).abs())
        })
        .collect();
    Ok(AttributeOrder::from_scores(RankingMethod::Pcc, &scores))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(cols: &[Vec<f64>], labels: Vec<usize>) -> DecisionSystem<f64> {
        let rows = (0..labels.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        DecisionSystem::from_normalized(rows, labels, vec!["a".into(), "b".into()]).unwrap()
    }

    #[test]
    fn perfect_orthogonal_and_negated() {
        let labels = vec![0, 1, 0, 1];
        let perfect = vec![0.0, 1.0, 0.0, 1.0];
        // centred labels (-.5, .5, -.5, .5); covariance of this column with them is 0
        let ortho = vec![0.0, 0.0, 1.0, 1.0];
        let negated = vec![1.0, 0.0, 1.0, 0.0];
        let cov: f64 = ortho.iter().zip(&labels).map(|(x, &l)| (x - 0.5) * (l as f64 - 0.5)).sum();
        assert_eq!(cov, 0.0);
        let o = pcc_scores(&ds(&[ortho, perfect, negated], labels)).unwrap();
        assert_eq!(o.ranked_indices, vec![1, 2, 0]);
        assert_eq!(o.scores.unwrap(), vec![1.0, 1.0, 0.0]);
    }

    #[test]
    fn single_class() {
        let o = pcc_scores(&ds(&[vec![0.0, 1.0, 0.5]], vec![0, 0, 0])).unwrap();
        assert_eq!(o.scores.unwrap(), vec![0.0]);
    }
}
