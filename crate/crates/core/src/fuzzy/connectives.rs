//! Triangular norms and implicators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check_degree<F: Scalar>(v: F, context: &'static str) -> Result<()> {
    if v >= F::zero() && v <= F::one() {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange {
            value: v.as_f64(),
            context,
        })
    }
}

/// Conjunction on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TNorm {
    #[default]
    Minimum,
    Product,
    Lukasiewicz,
}

impl TNorm {
    /// Checked application; both arguments must be degrees.
    pub fn apply<F: Scalar>(self, a: F, b: F) -> Result<F> {
        check_degree(a, "t-norm argument")?;
        check_degree(b, "t-norm argument")?;
        Ok(self.eval(a, b))
    }

    #[inline]
    pub fn eval<F: Scalar>(self, a: F, b: F) -> F {
        match self {
            TNorm::Minimum => a.min(b),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz if a == F::one() => b,
            TNorm::Lukasiewicz if b == F::one() => a,
            TNorm::Lukasiewicz => (a + b - F::one()).max(F::zero()),
        }
    }

    /// Folds the norm over a sequence; the empty conjunction is 1.
    pub fn aggregate<F: Scalar, I: IntoIterator<Item = F>>(self, values: I) -> F {
        values.into_iter().fold(F::one(), |acc, v| self.eval(acc, v))
    }
}

/// Fuzzy implication on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Implicator {
    KleeneDienes,
    #[default]
    Lukasiewicz,
    Godel,
}

impl Implicator {
    pub fn apply<F: Scalar>(self, a: F, b: F) -> Result<F> {
        check_degree(a, "implicator argument")?;
        check_degree(b, "implicator argument")?;
        Ok(self.eval(a, b))
    }

    #[inline]
    pub fn eval<F: Scalar>(self, a: F, b: F) -> F {
        match self {
            Implicator::KleeneDienes => (F::one() - a).max(b),
            Implicator::Lukasiewicz => (F::one() - a + b).min(F::one()),
            Implicator::Godel => {
                if a <= b {
                    F::one()
                } else {
                    b
                }
            }
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TNorm::Minimum => "minimum",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
        })
    }
}

impl FromStr for TNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "minimum" | "min" => Ok(TNorm::Minimum),
            "product" | "prod" => Ok(TNorm::Product),
            "lukasiewicz" | "luk" => Ok(TNorm::Lukasiewicz),
            other => Err(Error::InvalidArgument(format!("unknown t-norm `{other}`"))),
        }
    }
}

impl fmt::Display for Implicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Implicator::KleeneDienes => "kleene-dienes",
            Implicator::Lukasiewicz => "lukasiewicz",
            Implicator::Godel => "godel",
        })
    }
}

impl FromStr for Implicator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "kleene-dienes" | "kd" => Ok(Implicator::KleeneDienes),
            "lukasiewicz" | "luk" => Ok(Implicator::Lukasiewicz),
            "godel" | "goedel" => Ok(Implicator::Godel),
            other => Err(Error::InvalidArgument(format!("unknown implicator `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TNORMS: [TNorm; 3] = [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz];
    const IMPLICATORS: [Implicator; 3] = [
        Implicator::KleeneDienes,
        Implicator::Lukasiewicz,
        Implicator::Godel,
    ];

    #[test]
    fn tnorm_examples() {
        assert_eq!(TNorm::Minimum.apply(0.3, 0.7).unwrap(), 0.3);
        for t in TNORMS {
            assert_eq!(t.apply(1.0, 0.42).unwrap(), 0.42);
        }
        // max(0, 0.6 + 0.7 - 1)
        assert!((TNorm::Lukasiewicz.apply(0.6, 0.7).unwrap() - 0.3_f64).abs() < 1e-12);
    }

    #[test]
    fn implicator_examples() {
        for i in IMPLICATORS {
            assert_eq!(i.apply(1.0, 0.0).unwrap(), 0.0);
            assert_eq!(i.apply(0.0, 0.0).unwrap(), 1.0);
            assert_eq!(i.apply(0.0, 1.0).unwrap(), 1.0);
            assert_eq!(i.apply(1.0, 1.0).unwrap(), 1.0);
        }
        // min(1, 1 - 0.6 + 0.2)
        assert!((Implicator::Lukasiewicz.apply(0.6, 0.2).unwrap() - 0.6_f64).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            TNorm::Minimum.apply(1.2, 0.3),
            Err(Error::DegreeOutOfRange { .. })
        ));
        assert!(Implicator::Godel.apply(0.3, -0.1).is_err());
        assert!(TNorm::Product.apply(f64::NAN, 0.3).is_err());
    }

    #[test]
    fn names_round_trip() {
        for t in TNORMS {
            assert_eq!(t.to_string().parse::<TNorm>().unwrap(), t);
        }
        for i in IMPLICATORS {
            assert_eq!(i.to_string().parse::<Implicator>().unwrap(), i);
        }
        assert!("hamacher".parse::<TNorm>().is_err());
    }

    #[test]
    fn works_in_single_precision() {
        assert_eq!(TNorm::Minimum.apply(0.25f32, 0.5f32).unwrap(), 0.25f32);
        assert_eq!(Implicator::Lukasiewicz.apply(1.0f32, 0.5f32).unwrap(), 0.5f32);
    }

    proptest! {
        #[test]
        fn tnorm_laws(a in 0.0f64..=1.0, b in 0.0f64..=1.0, c in 0.0f64..=1.0, d in 0.0f64..=1.0) {
            for t in TNORMS {
                prop_assert!((t.eval(1.0, a) - a).abs() <= 1e-12);
                prop_assert!((t.eval(a, b) - t.eval(b, a)).abs() <= 1e-12);
                prop_assert!((t.eval(a, t.eval(b, c)) - t.eval(t.eval(a, b), c)).abs() <= 1e-12);
                let (lo, hi) = if c <= d { (c, d) } else { (d, c) };
                prop_assert!(t.eval(a, lo) <= t.eval(a, hi) + 1e-12);
                let v = t.eval(a, b);
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }

        #[test]
        fn implicator_laws(a in 0.0f64..=1.0, b in 0.0f64..=1.0, c in 0.0f64..=1.0) {
            let (lo, hi) = if a <= c { (a, c) } else { (c, a) };
            for i in IMPLICATORS {
                prop_assert!(i.eval(lo, b) >= i.eval(hi, b) - 1e-12);
                prop_assert!(i.eval(b, lo) <= i.eval(b, hi) + 1e-12);
                prop_assert!((i.eval(1.0, b) - b).abs() <= 1e-12);
                let v = i.eval(a, b);
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }
    }
}
