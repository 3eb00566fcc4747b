use rayon::prelude::*;

use super::{AttributeOrder, RankingMethod};
use crate::data::DecisionSystem;
use crate::error::{Error, Result};
use crate::fuzzy::{b_indiscernibility, positive_region_from_relation, FuzzyParams, FuzzyRelationMatrix};
use crate::scalar::Scalar;

/// Stop tolerance on the dependency degree.
const GAMMA_TOLERANCE: f64 = 1e-9;

/// Sigma-count of the positive region under `T(current, R_a)`, without
/// materializing the candidate relation.
fn candidate_cardinality<F: Scalar>(
    ds: &DecisionSystem<F>,
    current: &FuzzyRelationMatrix<F>,
    attribute: usize,
    params: &FuzzyParams<F>,
) -> F {
    let n = ds.num_objects();
    let kind = ds.relation_kinds()[attribute];
    let labels = ds.labels();
    let col = ds.column(attribute);
    let scale = params.similarity_scale;
    (0..n)
        .map(|u| {
            let row = current.row(u);
            let mut pos = F::one();
            for v in 0..n {
                let r = params.tnorm.eval(row[v], kind.eval(col[u], col[v], scale));
                let member = if labels[v] == labels[u] { F::one() } else { F::zero() };
                pos = pos.min(params.implicator.eval(r, member));
            }
            pos
        })
        .sum()
}

/// QuickReduct that records the order of selection.
///
/// Each round adds the attribute with the largest dependency degree (lowest
/// index on ties). Greedy selection stops once the degree reaches that of the
/// full attribute set; the remaining attributes follow in original order.
pub fn quickreduct_ordered<F: Scalar>(
    ds: &DecisionSystem<F>,
    params: &FuzzyParams<F>,
) -> Result<AttributeOrder<F>> {
    let m = ds.num_attributes();
    if m == 0 {
        return Err(Error::EmptyAttributeSet);
    }
    params.validate()?;
    let all: Vec<usize> = (0..m).collect();
    let r_all = b_indiscernibility(ds, &all, params)?;
    let full_card = positive_region_from_relation(&r_all, ds.labels(), params.implicator)?.cardinality();
    if full_card <= F::zero() {
        return Err(Error::DegenerateSystem);
    }
    drop(r_all);

    let target = F::one() - F::of(GAMMA_TOLERANCE);
    let mut current = FuzzyRelationMatrix::full(ds.num_objects());
    let mut selected: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    let mut in_b = vec![false; m];

    while selected.len() < m {
        let candidates: Vec<usize> = (0..m).filter(|&a| !in_b[a]).collect();
        let scores: Vec<F> = candidates
            .par_iter()
            .map(|&a| candidate_cardinality(ds, &current, a, params) / full_card)
            .collect();
        let mut best = 0;
        for i in 1..scores.len() {
            if scores[i] > scores[best] {
                best = i;
            }
        }
        let a = candidates[best];
        let ra = FuzzyRelationMatrix::for_attribute(ds, a, params.similarity_scale)?;
        current = current.intersect(&ra, params.tnorm)?;
        in_b[a] = true;
        selected.push(a);
        trace.push(scores[best]);
        if scores[best] >= target {
            break;
        }
    }

    let superreduct_size = selected.len();
    selected.extend((0..m).filter(|&a| !in_b[a]));
    Ok(AttributeOrder {
        method: RankingMethod::Ofrfs,
        ranked_indices: selected,
        scores: None,
        gamma_trace: Some(trace),
        superreduct_size: Some(superreduct_size),
    })
}
