//! Fuzzy-set algebra, fuzzy relations over a decision system, fuzzy-rough
//! approximations, positive region and degree of dependency.

mod approx;
mod connectives;
mod relation;

pub use approx::{
    gamma, gamma_from_positive_region, lower_approximation, positive_region,
    positive_region_from_relation, upper_approximation, FuzzySet,
};
pub use connectives::{Implicator, TNorm};
pub use relation::{
    b_indiscernibility, dominance, dominance_scaled, indiscernibility, indiscernibility_scaled,
    FuzzyRelationMatrix, RelationKind,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Connectives and relation scale shared by approximation-based routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuzzyParams<F> {
    /// Aggregates per-attribute relations into a B-relation.
    pub tnorm: TNorm,
    /// Used by the lower approximation.
    pub implicator: Implicator,
    /// Width over which per-attribute similarity decays to zero, in (0, 1].
    /// 1 gives the plain `1 - |x - y|` relation.
    pub similarity_scale: F,
}

impl<F: Scalar> Default for FuzzyParams<F> {
    fn default() -> Self {
        FuzzyParams {
            tnorm: TNorm::Minimum,
            implicator: Implicator::Lukasiewicz,
            similarity_scale: F::one(),
        }
    }
}

impl<F: Scalar> FuzzyParams<F> {
    pub fn validate(&self) -> Result<()> {
        let s = self.similarity_scale;
        if s > F::zero() && s <= F::one() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "similarity scale must be in (0, 1], got {s}"
            )))
        }
    }
}
