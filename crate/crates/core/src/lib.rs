//! Fuzzy-rough rule induction (FRRI) with attribute ordering and feature
//! selection preprocessing.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! at the crate root fix it to `f64`, which is what the CLI and the
//! evaluation harness use.

pub mod data;
pub mod error;
pub mod eval;
pub mod frri;
pub mod fuzzy;
pub mod ranking;
pub mod scalar;
pub mod setcover;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type DecisionSystem = data::DecisionSystem<f64>;
pub type DecisionSystem32 = data::DecisionSystem<f32>;
pub type FuzzySet = fuzzy::FuzzySet<f64>;
pub type FuzzyRelationMatrix = fuzzy::FuzzyRelationMatrix<f64>;
pub type FuzzyParams = fuzzy::FuzzyParams<f64>;
pub type NormalizationParams = data::NormalizationParams<f64>;
pub type Rule = frri::Rule<f64>;
pub type Ruleset = frri::Ruleset<f64>;
pub type FrriConfig = frri::FrriConfig<f64>;
pub type AttributeOrder = ranking::AttributeOrder<f64>;
