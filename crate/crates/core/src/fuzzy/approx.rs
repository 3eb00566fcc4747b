use super::{b_indiscernibility, FuzzyParams, FuzzyRelationMatrix, Implicator, TNorm};
use crate::data::DecisionSystem;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Membership degree per object of a finite universe.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet<F>(Vec<F>);

impl<F: Scalar> FuzzySet<F> {
    pub fn new(memberships: Vec<F>) -> Result<Self> {
        if let Some(&v) = memberships.iter().find(|&&v| !(v >= F::zero() && v <= F::one())) {
            return Err(Error::DegreeOutOfRange {
                value: v.as_f64(),
                context: "fuzzy set membership",
            });
        }
        Ok(FuzzySet(memberships))
    }

    /// Crisp set: 1 where `pred` holds, 0 elsewhere.
    pub fn crisp(n: usize, pred: impl Fn(usize) -> bool) -> Self {
        FuzzySet((0..n).map(|u| if pred(u) { F::one() } else { F::zero() }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, u: usize) -> F {
        self.0[u]
    }

    pub fn memberships(&self) -> &[F] {
        &self.0
    }

    /// Sigma-count.
    pub fn cardinality(&self) -> F {
        self.0.iter().copied().sum()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

fn same_universe<F: Scalar>(a: &FuzzySet<F>, r: &FuzzyRelationMatrix<F>) -> Result<()> {
    if a.len() != r.size() {
        return Err(Error::DimensionMismatch {
            expected: r.size(),
            found: a.len(),
            context: "fuzzy set vs relation universe",
        });
    }
    Ok(())
}

/// `lower(u) = min_v I(R(u, v), A(v))`.
pub fn lower_approximation<F: Scalar>(
    a: &FuzzySet<F>,
    r: &FuzzyRelationMatrix<F>,
    i: Implicator,
) -> Result<FuzzySet<F>> {
    same_universe(a, r)?;
    Ok(FuzzySet(
        (0..r.size())
            .map(|u| {
                r.row(u)
                    .iter()
                    .zip(a.memberships())
                    .fold(F::one(), |acc, (&ruv, &av)| acc.min(i.eval(ruv, av)))
            })
            .collect(),
    ))
}

/// `upper(u) = max_v T(R(u, v), A(v))`.
pub fn upper_approximation<F: Scalar>(
    a: &FuzzySet<F>,
    r: &FuzzyRelationMatrix<F>,
    t: TNorm,
) -> Result<FuzzySet<F>> {
    same_universe(a, r)?;
    Ok(FuzzySet(
        (0..r.size())
            .map(|u| {
                r.row(u)
                    .iter()
                    .zip(a.memberships())
                    .fold(F::zero(), |acc, (&ruv, &av)| acc.max(t.eval(ruv, av)))
            })
            .collect(),
    ))
}

/// Membership of each object in the lower approximation of its own class.
pub fn positive_region_from_relation<F: Scalar>(
    r: &FuzzyRelationMatrix<F>,
    labels: &[usize],
    i: Implicator,
) -> Result<FuzzySet<F>> {
    if labels.len() != r.size() {
        return Err(Error::DimensionMismatch {
            expected: r.size(),
            found: labels.len(),
            context: "labels vs relation universe",
        });
    }
    Ok(FuzzySet(
        (0..r.size())
            .map(|u| {
                let own = labels[u];
                r.row(u).iter().zip(labels).fold(F::one(), |acc, (&ruv, &lv)| {
                    let member = if lv == own { F::one() } else { F::zero() };
                    acc.min(i.eval(ruv, member))
                })
            })
            .collect(),
    ))
}

pub fn positive_region<F: Scalar>(
    ds: &DecisionSystem<F>,
    attrs: &[usize],
    params: &FuzzyParams<F>,
) -> Result<FuzzySet<F>> {
    let r = b_indiscernibility(ds, attrs, params)?;
    positive_region_from_relation(&r, ds.labels(), params.implicator)
}

/// Ratio of sigma-counts; errors when the reference region is empty.
pub fn gamma_from_positive_region<F: Scalar>(pos: &FuzzySet<F>, reference_cardinality: F) -> Result<F> {
    if reference_cardinality <= F::zero() {
        return Err(Error::DegenerateSystem);
    }
    Ok(pos.cardinality() / reference_cardinality)
}

/// Degree of dependency of the decision on `attrs`, relative to all attributes.
pub fn gamma<F: Scalar>(ds: &DecisionSystem<F>, attrs: &[usize], params: &FuzzyParams<F>) -> Result<F> {
    let all: Vec<usize> = (0..ds.num_attributes()).collect();
    let pos_all = positive_region(ds, &all, params)?;
    let pos_b = positive_region(ds, attrs, params)?;
    gamma_from_positive_region(&pos_b, pos_all.cardinality())
}
