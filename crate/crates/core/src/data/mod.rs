//! Decision systems: normalized numeric condition attributes plus a
//! categorical decision attribute.

mod csv_format;
mod folds;
mod keel;

pub use csv_format::{parse_csv, parse_csv_with_delimiter};
pub use folds::{load_fold_pair, make_folds, prepare_fold, FoldData, FoldSplit};
pub use keel::{parse_keel, serialize_keel};

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::RelationKind;
use crate::scalar::Scalar;

/// Parsed but not yet normalized dataset, values in original units.
#[derive(Debug, Clone, PartialEq)]
pub struct RawDataset {
    pub attribute_names: Vec<String>,
    /// One row per object.
    pub values: Vec<Vec<f64>>,
    pub labels: Vec<String>,
    /// Non-fatal issues found while parsing (dropped attributes and the like).
    pub warnings: Vec<String>,
}

impl RawDataset {
    pub fn num_objects(&self) -> usize {
        self.values.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.attribute_names.len()
    }

    /// Rows restricted to `indices`, keeping attribute metadata.
    pub fn subset(&self, indices: &[usize]) -> RawDataset {
        RawDataset {
            attribute_names: self.attribute_names.clone(),
            values: indices.iter().map(|&i| self.values[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
            warnings: Vec::new(),
        }
    }
}

/// Per-attribute min-max parameters fitted on training data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationParams<F> {
    /// Column of the raw dataset each retained attribute came from.
    pub source_columns: Vec<usize>,
    /// Number of columns in the raw rows the params were fitted on.
    pub raw_arity: usize,
    pub min: Vec<F>,
    pub max: Vec<F>,
}

impl<F: Scalar> NormalizationParams<F> {
    pub fn num_attributes(&self) -> usize {
        self.min.len()
    }

    #[inline]
    fn scale(&self, j: usize, v: F) -> F {
        let (lo, hi) = (self.min[j], self.max[j]);
        if v >= hi {
            F::one()
        } else if v <= lo {
            F::zero()
        } else {
            ((v - lo) / (hi - lo)).min(F::one()).max(F::zero())
        }
    }

    /// Normalizes a row holding one value per retained attribute. Values
    /// outside the training range clamp to 0 or 1.
    pub fn transform(&self, row: &[F]) -> Result<Vec<F>> {
        if row.len() != self.num_attributes() {
            return Err(Error::DimensionMismatch {
                expected: self.num_attributes(),
                found: row.len(),
                context: "row to normalize",
            });
        }
        Ok(row.iter().enumerate().map(|(j, &v)| self.scale(j, v)).collect())
    }

    /// Normalizes a row in the layout of the original raw file, picking out
    /// the retained columns first.
    pub fn transform_raw(&self, raw_row: &[f64]) -> Result<Vec<F>> {
        if raw_row.len() != self.raw_arity {
            return Err(Error::DimensionMismatch {
                expected: self.raw_arity,
                found: raw_row.len(),
                context: "raw row to normalize",
            });
        }
        Ok(self
            .source_columns
            .iter()
            .enumerate()
            .map(|(j, &c)| self.scale(j, F::of(raw_row[c])))
            .collect())
    }

    /// Maps a normalized value back to original units.
    pub fn denormalize(&self, j: usize, v: F) -> F {
        self.min[j] + v * (self.max[j] - self.min[j])
    }

    fn select(&self, attrs: &[usize]) -> Self {
        NormalizationParams {
            source_columns: attrs.iter().map(|&a| self.source_columns[a]).collect(),
            raw_arity: self.raw_arity,
            min: attrs.iter().map(|&a| self.min[a]).collect(),
            max: attrs.iter().map(|&a| self.max[a]).collect(),
        }
    }
}

/// Normalized decision system. Rows are objects, columns condition
/// attributes, each value in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionSystem<F> {
    values: Vec<F>,
    num_objects: usize,
    attribute_names: Vec<String>,
    labels: Vec<usize>,
    class_vocabulary: Vec<String>,
    norm: NormalizationParams<F>,
    relation_kinds: Vec<RelationKind>,
    warnings: Vec<String>,
}

impl<F: Scalar> DecisionSystem<F> {
    /// Builds a system from values already in `[0, 1]`. Labels are indices
    /// into `class_vocabulary`.
    pub fn from_normalized(
        rows: Vec<Vec<F>>,
        labels: Vec<usize>,
        class_vocabulary: Vec<String>,
    ) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyDataset);
        }
        let m = rows[0].len();
        if labels.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: labels.len(),
                context: "labels",
            });
        }
        if class_vocabulary.is_empty() {
            return Err(Error::InvalidArgument("empty class vocabulary".into()));
        }
        let mut values = Vec::with_capacity(n * m);
        for row in &rows {
            if row.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: row.len(),
                    context: "row arity",
                });
            }
            for &v in row {
                if !(v >= F::zero() && v <= F::one()) {
                    return Err(Error::DegreeOutOfRange {
                        value: v.as_f64(),
                        context: "normalized attribute value",
                    });
                }
                values.push(v);
            }
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= class_vocabulary.len()) {
            return Err(Error::InvalidArgument(format!(
                "label index {bad} outside vocabulary of size {}",
                class_vocabulary.len()
            )));
        }
        Ok(DecisionSystem {
            values,
            num_objects: n,
            attribute_names: (0..m).map(|j| format!("a{}", j + 1)).collect(),
            labels,
            class_vocabulary,
            norm: NormalizationParams {
                source_columns: (0..m).collect(),
                raw_arity: m,
                min: vec![F::zero(); m],
                max: vec![F::one(); m],
            },
            relation_kinds: vec![RelationKind::Indiscernibility; m],
            warnings: Vec::new(),
        })
    }

    pub fn with_attribute_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.num_attributes() {
            return Err(Error::DimensionMismatch {
                expected: self.num_attributes(),
                found: names.len(),
                context: "attribute names",
            });
        }
        self.attribute_names = names;
        Ok(self)
    }

    pub fn with_relation_kinds(mut self, kinds: Vec<RelationKind>) -> Result<Self> {
        if kinds.len() != self.num_attributes() {
            return Err(Error::DimensionMismatch {
                expected: self.num_attributes(),
                found: kinds.len(),
                context: "relation kinds",
            });
        }
        self.relation_kinds = kinds;
        Ok(self)
    }

    pub fn num_objects(&self) -> usize {
        self.num_objects
    }

    pub fn num_attributes(&self) -> usize {
        self.attribute_names.len()
    }

    pub fn num_classes(&self) -> usize {
        self.class_vocabulary.len()
    }

    #[inline]
    pub fn value(&self, object: usize, attribute: usize) -> F {
        self.values[object * self.num_attributes() + attribute]
    }

    #[inline]
    pub fn row(&self, object: usize) -> &[F] {
        let m = self.num_attributes();
        &self.values[object * m..(object + 1) * m]
    }

    pub fn column(&self, attribute: usize) -> Vec<F> {
        (0..self.num_objects).map(|u| self.value(u, attribute)).collect()
    }

    #[inline]
    pub fn label(&self, object: usize) -> usize {
        self.labels[object]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_vocabulary(&self) -> &[String] {
        &self.class_vocabulary
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn normalization(&self) -> &NormalizationParams<F> {
        &self.norm
    }

    pub fn relation_kinds(&self) -> &[RelationKind] {
        &self.relation_kinds
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Number of objects per class, indexed like the vocabulary.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_classes()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    pub fn check_attributes(&self, attrs: &[usize]) -> Result<()> {
        let m = self.num_attributes();
        match attrs.iter().find(|&&a| a >= m) {
            Some(&index) => Err(Error::AttributeIndex { index, count: m }),
            None => Ok(()),
        }
    }

    /// Projection onto the given attributes, in the given order.
    pub fn select_attributes(&self, attrs: &[usize]) -> Result<Self> {
        self.check_attributes(attrs)?;
        let mut values = Vec::with_capacity(self.num_objects * attrs.len());
        for u in 0..self.num_objects {
            values.extend(attrs.iter().map(|&a| self.value(u, a)));
        }
        Ok(DecisionSystem {
            values,
            num_objects: self.num_objects,
            attribute_names: attrs.iter().map(|&a| self.attribute_names[a].clone()).collect(),
            labels: self.labels.clone(),
            class_vocabulary: self.class_vocabulary.clone(),
            norm: self.norm.select(attrs),
            relation_kinds: attrs.iter().map(|&a| self.relation_kinds[a]).collect(),
            warnings: self.warnings.clone(),
        })
    }

    /// Maps a label string to its index in the vocabulary.
    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.class_vocabulary.iter().position(|c| c == label)
    }
}

/// Fits min-max normalization on `raw` and returns the normalized system.
///
/// Attributes with zero range are removed, each removal is recorded as a
/// warning. The class vocabulary follows order of first appearance.
pub fn fit_normalize<F: Scalar>(raw: &RawDataset) -> Result<DecisionSystem<F>> {
    let n = raw.num_objects();
    if n == 0 {
        return Err(Error::EmptyDataset);
    }
    if raw.labels.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: raw.labels.len(),
            context: "labels",
        });
    }
    let m = raw.num_attributes();
    for (i, row) in raw.values.iter().enumerate() {
        if row.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: row.len(),
                context: "raw row arity",
            });
        }
        if let Some(j) = row.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("non-finite value in column {}", j + 1),
            });
        }
    }

    let mut warnings = raw.warnings.clone();
    let mut kept = Vec::new();
    let mut mins = Vec::new();
    let mut maxs = Vec::new();
    for j in 0..m {
        let (lo, hi) = raw
            .values
            .iter()
            .map(|r| r[j])
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        if hi > lo {
            kept.push(j);
            mins.push(F::of(lo));
            maxs.push(F::of(hi));
        } else {
            let msg = format!(
                "attribute `{}` is constant ({lo}) and was removed",
                raw.attribute_names[j]
            );
            warn!("{msg}");
            warnings.push(msg);
        }
    }

    let mut vocabulary: Vec<String> = Vec::new();
    let labels = raw
        .labels
        .iter()
        .map(|l| match vocabulary.iter().position(|c| c == l) {
            Some(i) => i,
            None => {
                vocabulary.push(l.clone());
                vocabulary.len() - 1
            }
        })
        .collect();

    let norm = NormalizationParams {
        source_columns: kept.clone(),
        raw_arity: m,
        min: mins,
        max: maxs,
    };
    let mut values = Vec::with_capacity(n * kept.len());
    for row in &raw.values {
        values.extend(norm.transform_raw(row)?);
    }
    Ok(DecisionSystem {
        values,
        num_objects: n,
        attribute_names: kept.iter().map(|&j| raw.attribute_names[j].clone()).collect(),
        labels,
        class_vocabulary: vocabulary,
        relation_kinds: vec![RelationKind::Indiscernibility; kept.len()],
        norm,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn raw(cols: Vec<Vec<f64>>, labels: &[&str]) -> RawDataset {
        let n = labels.len();
        RawDataset {
            attribute_names: (0..cols.len()).map(|j| format!("x{j}")).collect(),
            values: (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            warnings: vec![],
        }
    }

    #[test]
    fn affine_map_endpoints() {
        let ds: DecisionSystem<f64> =
            fit_normalize(&raw(vec![vec![2.0, 4.0, 6.0]], &["a", "b", "a"])).unwrap();
        assert_eq!(ds.column(0), vec![0.0, 0.5, 1.0]);
        assert_eq!(ds.class_vocabulary(), &["a".to_string(), "b".to_string()]);
        assert_eq!(ds.labels(), &[0, 1, 0]);
    }

    #[test]
    fn constant_attribute_dropped_with_warning() {
        let ds: DecisionSystem<f64> = fit_normalize(&raw(
            vec![vec![10.0, 10.0, 10.0], vec![1.0, 2.0, 3.0]],
            &["a", "b", "a"],
        ))
        .unwrap();
        assert_eq!(ds.num_attributes(), 1);
        assert_eq!(ds.attribute_names(), &["x1".to_string()]);
        assert_eq!(ds.warnings().len(), 1);
        assert!(ds.warnings()[0].contains("x0"));
    }

    #[test]
    fn single_row_removes_everything() {
        let ds: DecisionSystem<f64> = fit_normalize(&raw(vec![vec![1.0], vec![2.0]], &["a"])).unwrap();
        assert_eq!(ds.num_attributes(), 0);
        assert_eq!(ds.warnings().len(), 2);
    }

    #[test]
    fn zero_objects_is_error() {
        let r = raw(vec![vec![]], &[]);
        assert_eq!(fit_normalize::<f64>(&r).unwrap_err(), Error::EmptyDataset);
    }

    #[test]
    fn transform_clamps_out_of_range() {
        let ds: DecisionSystem<f64> = fit_normalize(&raw(vec![vec![2.0, 6.0]], &["a", "b"])).unwrap();
        let p = ds.normalization();
        assert_eq!(p.transform(&[8.0]).unwrap(), vec![1.0]);
        assert_eq!(p.transform(&[0.0]).unwrap(), vec![0.0]);
        assert_eq!(p.transform(&[4.0]).unwrap(), vec![0.5]);
        assert!(matches!(
            p.transform(&[1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn transform_raw_skips_removed_columns() {
        let ds: DecisionSystem<f64> = fit_normalize(&raw(
            vec![vec![5.0, 5.0], vec![2.0, 6.0]],
            &["a", "b"],
        ))
        .unwrap();
        assert_eq!(ds.normalization().transform_raw(&[123.0, 5.0]).unwrap(), vec![0.75]);
    }

    #[test]
    fn projection_keeps_order_and_params() {
        let ds: DecisionSystem<f64> = fit_normalize(&raw(
            vec![vec![0.0, 1.0], vec![0.0, 10.0], vec![5.0, 7.0]],
            &["a", "b"],
        ))
        .unwrap();
        let p = ds.select_attributes(&[2, 0]).unwrap();
        assert_eq!(p.attribute_names(), &["x2".to_string(), "x0".to_string()]);
        assert_eq!(p.row(0), &[0.0, 0.0]);
        assert_eq!(p.row(1), &[1.0, 1.0]);
        assert_eq!(p.normalization().transform_raw(&[0.5, 0.0, 6.0]).unwrap(), vec![0.5, 0.5]);
        assert!(ds.select_attributes(&[3]).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let ds: DecisionSystem<f32> = fit_normalize(&raw(vec![vec![2.0, 4.0, 6.0]], &["a", "b", "a"])).unwrap();
        assert_eq!(ds.column(0), vec![0.0f32, 0.5, 1.0]);
    }

    proptest! {
        #[test]
        fn refit_round_trip(rows in prop::collection::vec(prop::collection::vec(-1e3f64..1e3, 3), 2..20),
                            probe in prop::collection::vec(-2e3f64..2e3, 3)) {
            let labels: Vec<String> = (0..rows.len()).map(|i| (i % 2).to_string()).collect();
            let r = RawDataset {
                attribute_names: vec!["a".into(), "b".into(), "c".into()],
                values: rows.clone(),
                labels,
                warnings: vec![],
            };
            let ds: DecisionSystem<f64> = fit_normalize(&r).unwrap();
            for (i, row) in rows.iter().enumerate() {
                prop_assert_eq!(ds.normalization().transform_raw(row).unwrap(), ds.row(i).to_vec());
            }
            let t = ds.normalization().transform_raw(&probe).unwrap();
            prop_assert!(t.iter().all(|v| (0.0..=1.0).contains(v)));
        }
    }
}
