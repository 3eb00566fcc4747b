//! Cross-validation, the three reported metrics, significance tests and
//! report writers.

mod cv;
mod metrics;
mod report;
mod stats;
mod variant;

pub use cv::{cv_folds, fit_variant, run_cv, run_fold, FoldRecord};
pub use metrics::{balanced_accuracy, mean_rule_length};
pub use report::{AggregateRow, Metric, MetricsReport, ReportConfig};
pub use stats::{
    conover_posthoc, friedman_test, significance, wilcoxon_signed_rank, Alternative, PairwiseResult,
    Significance, TestResult, ALPHA, WEAK_ALPHA,
};
pub use variant::Variant;
