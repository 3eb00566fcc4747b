use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::balanced_accuracy;
use super::Variant;
use crate::data::{make_folds, prepare_fold, DecisionSystem, FoldData, RawDataset};
use crate::error::Result;
use crate::frri::{fit, FrriConfig, Ruleset};
use crate::ranking::{apply_policy, rank, AttributeOrder, RankingMethod};
use crate::scalar::Scalar;

/// Metrics of one variant on one fold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldRecord {
    pub dataset: String,
    pub variant: String,
    pub fold: usize,
    pub balanced_accuracy: f64,
    pub rule_count: usize,
    pub mean_rule_length: f64,
    pub retained_attributes: usize,
    pub total_attributes: usize,
    /// Rule selection was proven minimal.
    pub optimal: bool,
}

/// Stratified seeded `k`-fold split of one dataset into train/test pairs.
pub fn cv_folds(raw: &RawDataset, k: usize, seed: u64) -> Result<Vec<(RawDataset, RawDataset)>> {
    Ok(make_folds(&raw.labels, k, seed)?
        .into_iter()
        .map(|s| (raw.subset(&s.train_indices), raw.subset(&s.test_indices)))
        .collect())
}

fn fit_with_order<F: Scalar>(
    train: &DecisionSystem<F>,
    order: &AttributeOrder<F>,
    variant: Variant,
    config: &FrriConfig<F>,
) -> Result<Ruleset<F>> {
    let retained = apply_policy(order, variant.policy, train.num_attributes())?;
    let reduced = train.select_attributes(&retained)?;
    let prune_order: Vec<usize> = (0..retained.len()).collect();
    Ok(fit(&reduced, &prune_order, config)?.with_source(variant.method.to_string(), variant.policy.to_string()))
}

/// Ranks, truncates and fits one variant on a normalized training system.
pub fn fit_variant<F: Scalar>(train: &DecisionSystem<F>, variant: Variant, config: &FrriConfig<F>) -> Result<Ruleset<F>> {
    let order = rank(train, variant.method, &config.fuzzy)?;
    fit_with_order(train, &order, variant, config)
}

fn evaluate<F: Scalar>(
    dataset: &str,
    fold_index: usize,
    fold: &FoldData<F>,
    variant: Variant,
    ruleset: &Ruleset<F>,
) -> Result<FoldRecord> {
    let cols = &ruleset.normalization.source_columns;
    let train_cols = &fold.train.normalization().source_columns;
    // test rows are laid out like the training system; pick retained columns
    let picks: Vec<usize> = cols
        .iter()
        .map(|c| train_cols.iter().position(|t| t == c).expect("retained column comes from training system"))
        .collect();
    let predicted = fold
        .test_rows
        .iter()
        .map(|row| {
            let projected: Vec<F> = picks.iter().map(|&j| row[j]).collect();
            ruleset.classify(&projected).map(|c| ruleset.class_name(c).to_string())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FoldRecord {
        dataset: dataset.to_string(),
        variant: variant.to_string(),
        fold: fold_index,
        balanced_accuracy: balanced_accuracy(&fold.test_labels, &predicted)?,
        rule_count: ruleset.len(),
        mean_rule_length: ruleset.mean_rule_length()?,
        retained_attributes: cols.len(),
        total_attributes: fold.train.num_attributes(),
        optimal: ruleset.optimal,
    })
}

/// Fits `variant` on the fold's training part and scores its test part.
pub fn run_fold<F: Scalar>(
    dataset: &str,
    fold_index: usize,
    fold: &FoldData<F>,
    variant: Variant,
    config: &FrriConfig<F>,
) -> Result<(FoldRecord, Ruleset<F>)> {
    let ruleset = fit_variant(&fold.train, variant, config)?;
    let record = evaluate(dataset, fold_index, fold, variant, &ruleset)?;
    Ok((record, ruleset))
}

/// Every variant on every fold. Orderings are computed once per fold and
/// method. Records come back sorted by variant position, then fold.
pub fn run_cv<F: Scalar>(
    dataset: &str,
    folds: &[(RawDataset, RawDataset)],
    variants: &[Variant],
    config: &FrriConfig<F>,
) -> Result<Vec<FoldRecord>> {
    config.validate()?;
    let per_fold = folds
        .par_iter()
        .enumerate()
        .map(|(i, (train, test))| -> Result<Vec<FoldRecord>> {
            let fold = prepare_fold::<F>(train, test)?;
            let mut methods: Vec<RankingMethod> = variants.iter().map(|v| v.method).collect();
            methods.dedup();
            methods.sort_by_key(|m| m.to_string());
            methods.dedup();
            let orders: HashMap<RankingMethod, AttributeOrder<F>> = methods
                .par_iter()
                .map(|&m| rank(&fold.train, m, &config.fuzzy).map(|o| (m, o)))
                .collect::<Result<_>>()?;
            variants
                .par_iter()
                .map(|&v| {
                    let rs = fit_with_order(&fold.train, &orders[&v.method], v, config)?;
                    evaluate(dataset, i, &fold, v, &rs)
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut records: Vec<FoldRecord> = per_fold.into_iter().flatten().collect();
    let position = |name: &str| variants.iter().position(|v| v.to_string() == name);
    records.sort_by_key(|r| (position(&r.variant), r.fold));
    Ok(records)
}
