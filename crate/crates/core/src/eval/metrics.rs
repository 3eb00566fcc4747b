use crate::error::{Error, Result};
use crate::frri::Ruleset;
use crate::scalar::Scalar;

/// Mean per-class recall over the classes that occur in `truth`.
pub fn balanced_accuracy<L: PartialEq>(truth: &[L], predicted: &[L]) -> Result<f64> {
    if truth.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if truth.len() != predicted.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            found: predicted.len(),
            context: "predictions vs labels",
        });
    }
    let mut classes: Vec<&L> = Vec::new();
    let mut support = Vec::new();
    let mut hits = Vec::new();
    for (t, p) in truth.iter().zip(predicted) {
        let c = match classes.iter().position(|&c| c == t) {
            Some(c) => c,
            None => {
                classes.push(t);
                support.push(0usize);
                hits.push(0usize);
                classes.len() - 1
            }
        };
        support[c] += 1;
        if p == t {
            hits[c] += 1;
        }
    }
    let sum: f64 = hits.iter().zip(&support).map(|(&h, &s)| h as f64 / s as f64).sum();
    Ok(sum / classes.len() as f64)
}

pub fn mean_rule_length<F: Scalar>(ruleset: &Ruleset<F>) -> Result<f64> {
    ruleset.mean_rule_length()
}
