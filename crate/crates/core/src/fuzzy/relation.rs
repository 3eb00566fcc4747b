use serde::{Deserialize, Serialize};

use super::{FuzzyParams, TNorm};
use crate::data::DecisionSystem;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check<F: Scalar>(v: F) -> Result<()> {
    if v >= F::zero() && v <= F::one() {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange {
            value: v.as_f64(),
            context: "normalized attribute value",
        })
    }
}

/// `1 - |x - y|` on normalized values.
pub fn indiscernibility<F: Scalar>(x: F, y: F) -> Result<F> {
    check(x)?;
    check(y)?;
    Ok(indiscernibility_scaled(x, y, F::one()))
}

/// `max(0, 1 - |x - y| / scale)`.
#[inline]
pub fn indiscernibility_scaled<F: Scalar>(x: F, y: F, scale: F) -> F {
    (F::one() - (x - y).abs() / scale).max(F::zero())
}

/// Degree to which `x` dominates `y`: `min(1 - (y - x), 1)`.
pub fn dominance<F: Scalar>(x: F, y: F) -> Result<F> {
    check(x)?;
    check(y)?;
    Ok(dominance_scaled(x, y, F::one()))
}

/// `min(1, max(0, 1 - (y - x) / scale))`; equals 1 whenever `x >= y`.
#[inline]
pub fn dominance_scaled<F: Scalar>(x: F, y: F, scale: F) -> F {
    (F::one() - (y - x) / scale).min(F::one()).max(F::zero())
}

/// How values of one attribute are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    #[default]
    Indiscernibility,
    Dominance,
}

impl RelationKind {
    #[inline]
    pub fn eval<F: Scalar>(self, x: F, y: F, scale: F) -> F {
        match self {
            RelationKind::Indiscernibility => indiscernibility_scaled(x, y, scale),
            RelationKind::Dominance => dominance_scaled(x, y, scale),
        }
    }
}

/// Dense object-by-object matrix of degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyRelationMatrix<F> {
    n: usize,
    values: Vec<F>,
}

impl<F: Scalar> FuzzyRelationMatrix<F> {
    /// Row-major `n x n` values, each in `[0, 1]`.
    pub fn new(n: usize, values: Vec<F>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: values.len(),
                context: "relation matrix entries",
            });
        }
        for &v in &values {
            check(v)?;
        }
        Ok(FuzzyRelationMatrix { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> F) -> Result<Self> {
        let mut values = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                values.push(f(u, v));
            }
        }
        Self::new(n, values)
    }

    /// All-ones relation, the neutral element of t-norm aggregation.
    pub fn full(n: usize) -> Self {
        FuzzyRelationMatrix {
            n,
            values: vec![F::one(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FuzzyRelationMatrix {
            n,
            values: vec![F::zero(); n * n],
        };
        for u in 0..n {
            m.values[u * n + u] = F::one();
        }
        m
    }

    /// Relation of a single attribute.
    pub fn for_attribute(ds: &DecisionSystem<F>, attribute: usize, scale: F) -> Result<Self> {
        ds.check_attributes(&[attribute])?;
        let kind = ds.relation_kinds()[attribute];
        let col = ds.column(attribute);
        let n = col.len();
        let mut values = Vec::with_capacity(n * n);
        for &x in &col {
            values.extend(col.iter().map(|&y| kind.eval(x, y, scale)));
        }
        Ok(FuzzyRelationMatrix { n, values })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> F {
        self.values[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[F] {
        &self.values[u * self.n..(u + 1) * self.n]
    }

    /// Pointwise t-norm with another relation over the same universe.
    pub fn intersect(&self, other: &Self, t: TNorm) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
                context: "relation intersection",
            });
        }
        Ok(FuzzyRelationMatrix {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| t.eval(a, b))
                .collect(),
        })
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|u| self.get(u, u) == F::one())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| (0..u).all(|v| self.get(u, v) == self.get(v, u)))
    }
}

/// Relation over attribute subset `attrs`: the t-norm of the per-attribute
/// relations, each compared with the attribute's [`RelationKind`].
pub fn b_indiscernibility<F: Scalar>(
    ds: &DecisionSystem<F>,
    attrs: &[usize],
    params: &FuzzyParams<F>,
) -> Result<FuzzyRelationMatrix<F>> {
    if attrs.is_empty() {
        return Err(Error::EmptyAttributeSet);
    }
    ds.check_attributes(attrs)?;
    params.validate()?;
    let n = ds.num_objects();
    let kinds = ds.relation_kinds();
    let scale = params.similarity_scale;
    let mut values = Vec::with_capacity(n * n);
    for u in 0..n {
        let ru = ds.row(u);
        for v in 0..n {
            let rv = ds.row(v);
            let agg = attrs.iter().fold(F::one(), |acc, &a| {
                params.tnorm.eval(acc, kinds[a].eval(ru[a], rv[a], scale))
            });
            values.push(agg);
        }
    }
    Ok(FuzzyRelationMatrix { n, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn indiscernibility_examples() {
        assert!(close(indiscernibility(0.2, 0.5).unwrap(), 0.7));
        assert_eq!(indiscernibility(0.35, 0.35).unwrap(), 1.0);
        assert_eq!(indiscernibility(0.0, 1.0).unwrap(), 0.0);
        assert!(indiscernibility(1.5, 0.0).is_err());
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(dominance(0.5, 0.2).unwrap(), 1.0);
        assert!(close(dominance(0.2, 0.5).unwrap(), 0.7));
        assert_eq!(dominance(0.8, 0.8).unwrap(), 1.0);
        assert!(dominance(0.2, -0.5).is_err());
    }

    #[test]
    fn scaled_relations_cut_off() {
        assert_eq!(indiscernibility_scaled(0.2, 0.5, 0.25), 0.0);
        assert!(close(indiscernibility_scaled(0.2, 0.3, 0.5), 0.8));
        assert!(close(dominance_scaled(0.2, 0.3, 0.5), 0.8));
        assert_eq!(dominance_scaled(0.0, 1.0, 0.5), 0.0);
    }

    fn two_by_two() -> DecisionSystem<f64> {
        DecisionSystem::from_normalized(
            vec![vec![0.0, 0.0], vec![0.3, 0.5]],
            vec![0, 1],
            vec!["a".into(), "b".into()],
        )
        .unwrap()
    }

    #[test]
    fn b_relation_examples() {
        let ds = two_by_two();
        let p = FuzzyParams::default();
        let r = b_indiscernibility(&ds, &[0, 1], &p).unwrap();
        // min(1 - 0.3, 1 - 0.5)
        assert!(close(r.get(0, 1), 0.5));
        assert!(r.is_reflexive() && r.is_symmetric());
        let single = b_indiscernibility(&ds, &[1], &p).unwrap();
        assert_eq!(single, FuzzyRelationMatrix::for_attribute(&ds, 1, 1.0).unwrap());
        assert_eq!(b_indiscernibility(&ds, &[], &p).unwrap_err(), Error::EmptyAttributeSet);
        assert!(b_indiscernibility(&ds, &[2], &p).is_err());
    }

    #[test]
    fn dominance_relation_is_reflexive_not_symmetric() {
        let ds = two_by_two()
            .with_relation_kinds(vec![RelationKind::Dominance, RelationKind::Indiscernibility])
            .unwrap();
        let r = b_indiscernibility(&ds, &[0], &FuzzyParams::default()).unwrap();
        assert!(r.is_reflexive());
        assert!(!r.is_symmetric());
        assert_eq!(r.get(1, 0), 1.0);
        assert!(close(r.get(0, 1), 0.7));
    }

    proptest! {
        #[test]
        fn relations_in_unit_interval(x in 0.0f64..=1.0, y in 0.0f64..=1.0, s in 0.01f64..=1.0) {
            for k in [RelationKind::Indiscernibility, RelationKind::Dominance] {
                let v = k.eval(x, y, s);
                prop_assert!((0.0..=1.0).contains(&v));
                prop_assert_eq!(k.eval(x, x, s), 1.0);
            }
            prop_assert_eq!(indiscernibility_scaled(x, y, s), indiscernibility_scaled(y, x, s));
            if x >= y {
                prop_assert_eq!(dominance_scaled(x, y, s), 1.0);
            }
        }
    }
}
