//! Train/test splits: KEEL fold pairs and seeded stratified k-fold.

use std::path::Path;

use log::warn;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{fit_normalize, parse_keel, DecisionSystem, RawDataset};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Disjoint train/test index lists covering a dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldSplit {
    pub train_indices: Vec<usize>,
    pub test_indices: Vec<usize>,
}

/// Stratified, seeded partition into `k` folds.
///
/// Members of each class are shuffled and dealt round-robin; the dealing
/// position carries over between classes so fold sizes differ by at most one.
pub fn make_folds<L: PartialEq>(labels: &[L], k: usize, seed: u64) -> Result<Vec<FoldSplit>> {
    let n = labels.len();
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 folds, got {k}")));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "cannot make {k} folds from {n} objects"
        )));
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<&L> = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        match reps.iter().position(|r| *r == l) {
            Some(c) => classes[c].push(i),
            None => {
                reps.push(l);
                classes.push(vec![i]);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buckets = vec![Vec::new(); k];
    let mut next = 0;
    for (c, members) in classes.iter_mut().enumerate() {
        if members.len() < k {
            warn!(
                "class #{c} has {} members, fewer than {k} folds; stratification is best effort",
                members.len()
            );
        }
        members.shuffle(&mut rng);
        for &i in members.iter() {
            buckets[next].push(i);
            next = (next + 1) % k;
        }
    }
    Ok((0..k)
        .map(|f| {
            let mut test = buckets[f].clone();
            test.sort_unstable();
            let mut train: Vec<usize> = buckets
                .iter()
                .enumerate()
                .filter(|&(g, _)| g != f)
                .flat_map(|(_, b)| b.iter().copied())
                .collect();
            train.sort_unstable();
            FoldSplit {
                train_indices: train,
                test_indices: test,
            }
        })
        .collect())
}

/// A training system plus test rows normalized with the training parameters.
#[derive(Debug, Clone)]
pub struct FoldData<F> {
    pub train: DecisionSystem<F>,
    pub test_rows: Vec<Vec<F>>,
    pub test_labels: Vec<String>,
}

/// Fits normalization on `train` only and maps `test` through it.
pub fn prepare_fold<F: Scalar>(train: &RawDataset, test: &RawDataset) -> Result<FoldData<F>> {
    if train.attribute_names != test.attribute_names {
        return Err(Error::AttributeMismatch(format!(
            "train has {:?}, test has {:?}",
            train.attribute_names, test.attribute_names
        )));
    }
    let ds = fit_normalize::<F>(train)?;
    let test_rows = test
        .values
        .iter()
        .map(|r| ds.normalization().transform_raw(r))
        .collect::<Result<Vec<_>>>()?;
    Ok(FoldData {
        train: ds,
        test_rows,
        test_labels: test.labels.clone(),
    })
}

/// Reads a KEEL `tra`/`tst` pair.
pub fn load_fold_pair<F: Scalar>(train_file: &Path, test_file: &Path) -> Result<FoldData<F>> {
    let train = parse_keel(&std::fs::read_to_string(train_file)?)?;
    let test = parse_keel(&std::fs::read_to_string(test_file)?)?;
    prepare_fold(&train, &test)
}
