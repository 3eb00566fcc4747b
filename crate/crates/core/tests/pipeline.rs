use std::path::PathBuf;

use frri_core::data::{fit_normalize, parse_keel, RawDataset};
use frri_core::eval::{balanced_accuracy, cv_folds, fit_variant, Variant};
use frri_core::frri::{self, fit};
use frri_core::{DecisionSystem32, FrriConfig, Ruleset};

fn wine() -> RawDataset {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/benchmarks/wine.dat");
    parse_keel(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn saved_ruleset_predicts_identically() {
    let raw = wine();
    let (train, test) = cv_folds(&raw, 5, 3).unwrap().swap_remove(0);
    let ds = fit_normalize::<f64>(&train).unwrap();
    let rs = fit_variant(&ds, "ofrfs-0.6".parse().unwrap(), &FrriConfig::default()).unwrap();
    let json = rs.to_json().unwrap();
    let back = Ruleset::from_json(&json).unwrap();
    assert_eq!(back.to_json().unwrap(), json);
    for row in &test.values {
        assert_eq!(rs.classify_raw(row).unwrap(), back.classify_raw(row).unwrap());
    }
    assert_eq!(back.source.ranking, "ofrfs");
    assert_eq!(back.source.retention, "0.6");
}

#[test]
fn consistent_rules_reproduce_training_labels() {
    // A narrower similarity makes the rules consistent, so only rules of an
    // object's own class can give it a positive covering degree.
    let raw = wine();
    let ds = fit_normalize::<f64>(&raw).unwrap();
    let mut cfg = FrriConfig::default();
    cfg.fuzzy.similarity_scale = 0.2;
    let rs = fit_variant(&ds, Variant::CONTROL, &cfg).unwrap();
    let pred: Vec<usize> = (0..ds.num_objects()).map(|i| rs.classify(ds.row(i)).unwrap()).collect();
    assert_eq!(pred, ds.labels());
    assert!(rs.rules.iter().all(|r| r.len() <= ds.num_attributes()));
}

#[test]
fn single_precision_pipeline_runs() {
    let raw = wine();
    let ds: DecisionSystem32 = fit_normalize(&raw).unwrap();
    let order: Vec<usize> = (0..ds.num_attributes()).collect();
    let rs = fit(&ds, &order, &frri::FrriConfig::<f32>::default()).unwrap();
    assert!(!rs.is_empty());
    let pred: Vec<usize> = (0..ds.num_objects()).map(|i| rs.classify(ds.row(i)).unwrap()).collect();
    assert!(balanced_accuracy(ds.labels(), &pred).unwrap() > 0.8);
}
