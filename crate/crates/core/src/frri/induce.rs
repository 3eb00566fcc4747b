use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ConditionKind, FrriConfig, Rule, Ruleset, RulesetSource};
use crate::data::DecisionSystem;
use crate::error::{Error, Result};
use crate::fuzzy::FuzzyParams;
use crate::scalar::Scalar;
use crate::setcover::{solve_exact, SetCoverProblem, SetCoverSolution};

/// Relation between objects `u` and `v` over every attribute of `ds`.
fn full_relation<F: Scalar>(ds: &DecisionSystem<F>, u: usize, v: usize, params: &FuzzyParams<F>) -> F {
    let kinds = ds.relation_kinds();
    let (ru, rv) = (ds.row(u), ds.row(v));
    params.tnorm.aggregate(
        (0..ru.len()).map(|a| kinds[a].eval(ru[a], rv[a], params.similarity_scale)),
    )
}

/// Lower approximation of the class of `u`, evaluated at `u`, under the
/// relation over all attributes of `ds`.
fn consequent_degree<F: Scalar>(ds: &DecisionSystem<F>, u: usize, params: &FuzzyParams<F>) -> F {
    let own = ds.label(u);
    let mut deg = F::one();
    for v in 0..ds.num_objects() {
        let member = if ds.label(v) == own { F::one() } else { F::zero() };
        deg = deg.min(params.implicator.eval(full_relation(ds, u, v, params), member));
        if deg <= F::zero() {
            break;
        }
    }
    deg
}

/// Consequent degree of every object's total rule.
pub fn consequent_degrees<F: Scalar>(ds: &DecisionSystem<F>, params: &FuzzyParams<F>) -> Vec<F> {
    (0..ds.num_objects())
        .into_par_iter()
        .map(|u| consequent_degree(ds, u, params))
        .collect()
}

/// Rule with a SIMILAR condition on every attribute, generated by object `u`.
pub fn total_rule<F: Scalar>(ds: &DecisionSystem<F>, u: usize, params: &FuzzyParams<F>) -> Result<Rule<F>> {
    if u >= ds.num_objects() {
        return Err(Error::InvalidArgument(format!(
            "object {u} outside a system of {} objects",
            ds.num_objects()
        )));
    }
    Ok(total_with_degree(ds, u, consequent_degree(ds, u, params)))
}

fn total_with_degree<F: Scalar>(ds: &DecisionSystem<F>, u: usize, consequent_degree: F) -> Rule<F> {
    Rule {
        generator: u,
        kinds: vec![ConditionKind::Similar; ds.num_attributes()],
        anchors: ds.row(u).to_vec(),
        class: ds.label(u),
        consequent_degree,
    }
}

/// Fuzzy-subset test of the rule's covering set against its crisp class,
/// with slack `tolerance`.
pub fn is_consistent<F: Scalar>(ds: &DecisionSystem<F>, rule: &Rule<F>, tolerance: F, scale: F) -> Result<bool> {
    for v in 0..ds.num_objects() {
        let s = rule.covering_membership(ds.row(v), scale)?;
        let member = if ds.label(v) == rule.class { F::one() } else { F::zero() };
        if s > member + tolerance {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_order(order: &[usize], m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    for &a in order {
        if a >= m || std::mem::replace(&mut seen[a], true) {
            return Err(Error::InvalidArgument(format!(
                "attribute order {order:?} is not a permutation of 0..{m}"
            )));
        }
    }
    if order.len() != m {
        return Err(Error::InvalidArgument(format!(
            "attribute order has {} entries for {m} attributes",
            order.len()
        )));
    }
    Ok(())
}

/// Greedy shortening of the total rule of `u` along `order`.
pub fn rule_prune<F: Scalar>(
    ds: &DecisionSystem<F>,
    u: usize,
    order: &[usize],
    config: &FrriConfig<F>,
) -> Result<Rule<F>> {
    check_order(order, ds.num_attributes())?;
    let total = total_rule(ds, u, &config.fuzzy)?;
    Ok(prune(ds, total, order, config))
}

// Only objects of other classes can violate the subset test: for them the
// crisp membership is 0, so the rule is consistent iff every such object has
// min(M, consequent) <= tolerance. The matching degree of a candidate splits
// into decided prefix, trial condition and the still-SIMILAR suffix, so each
// trial costs one pass over those objects.
fn prune<F: Scalar>(ds: &DecisionSystem<F>, mut rule: Rule<F>, order: &[usize], config: &FrriConfig<F>) -> Rule<F> {
    let eps = config.consistency_tolerance;
    let scale = config.fuzzy.similarity_scale;
    if rule.consequent_degree <= eps {
        rule.kinds.fill(ConditionKind::Unused);
        return rule;
    }
    let others: Vec<usize> = (0..ds.num_objects()).filter(|&v| ds.label(v) != rule.class).collect();
    let k = others.len();
    let m = order.len();

    let mut suffix = vec![F::one(); (m + 1) * k];
    for i in (0..m).rev() {
        let a = order[i];
        let anchor = rule.anchors[a];
        for (j, &v) in others.iter().enumerate() {
            let d = ConditionKind::Similar.degree(anchor, ds.value(v, a), scale);
            suffix[i * k + j] = suffix[(i + 1) * k + j].min(d);
        }
    }
    if suffix[..k].iter().any(|&s| s > eps) {
        // relaxing a condition never lowers a degree, so nothing can pass
        return rule;
    }

    let mut prefix = vec![F::one(); k];
    for (i, &a) in order.iter().enumerate() {
        let anchor = rule.anchors[a];
        let rest = &suffix[(i + 1) * k..(i + 2) * k];
        let chosen = ConditionKind::TRIAL_ORDER
            .into_iter()
            .find(|&kind| {
                kind == ConditionKind::Similar
                    || others.iter().enumerate().all(|(j, &v)| {
                        prefix[j].min(rest[j]).min(kind.degree(anchor, ds.value(v, a), scale)) <= eps
                    })
            })
            .unwrap_or(ConditionKind::Similar);
        rule.kinds[a] = chosen;
        if chosen != ConditionKind::Unused {
            for (j, &v) in others.iter().enumerate() {
                prefix[j] = prefix[j].min(chosen.degree(anchor, ds.value(v, a), scale));
            }
        }
    }
    rule
}

/// One shortened rule per training object, in object order.
pub fn shorten_all<F: Scalar>(ds: &DecisionSystem<F>, order: &[usize], config: &FrriConfig<F>) -> Result<Vec<Rule<F>>> {
    check_order(order, ds.num_attributes())?;
    let degrees = consequent_degrees(ds, &config.fuzzy);
    Ok((0..ds.num_objects())
        .into_par_iter()
        .map(|u| prune(ds, total_with_degree(ds, u, degrees[u]), order, config))
        .collect())
}

/// `z[r][v]`: whether rule `r` covers object `v` at level `threshold`. Each
/// rule always covers its own generator.
pub fn coverage_matrix<F: Scalar>(
    ds: &DecisionSystem<F>,
    rules: &[Rule<F>],
    threshold: F,
    scale: F,
) -> Result<Vec<Vec<bool>>> {
    if !(threshold > F::zero() && threshold <= F::one()) {
        return Err(Error::InvalidArgument(format!(
            "coverage threshold must be in (0, 1], got {threshold}"
        )));
    }
    if let Some(r) = rules.iter().find(|r| r.anchors.len() != ds.num_attributes()) {
        return Err(Error::DimensionMismatch {
            expected: ds.num_attributes(),
            found: r.anchors.len(),
            context: "rule arity vs decision system",
        });
    }
    Ok(rules
        .par_iter()
        .map(|r| {
            (0..ds.num_objects())
                .map(|v| v == r.generator || r.covering_unchecked(ds.row(v), scale) >= threshold)
                .collect()
        })
        .collect())
}

/// Coverage matrix together with the chosen rules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverInstance {
    pub z: Vec<Vec<bool>>,
    pub solution: SetCoverSolution,
}

impl CoverInstance {
    pub fn selected(&self) -> &[bool] {
        &self.solution.selected
    }
}

/// Minimum number of rules whose rows of `z` cover every column.
pub fn select_rules(z: Vec<Vec<bool>>, node_budget: u64) -> Result<CoverInstance> {
    let problem = SetCoverProblem::from_matrix(&z)?;
    let solution = solve_exact(&problem, node_budget)?;
    if !solution.optimal {
        log::warn!(
            "rule selection stopped after {} nodes; keeping a cover of {} rules that is not proven minimal",
            solution.nodes,
            solution.objective
        );
    }
    Ok(CoverInstance { z, solution })
}

/// Shortening followed by selection. `order` is a permutation of the
/// attributes of `ds`.
pub fn fit<F: Scalar>(ds: &DecisionSystem<F>, order: &[usize], config: &FrriConfig<F>) -> Result<Ruleset<F>> {
    config.validate()?;
    let candidates = shorten_all(ds, order, config)?;
    let z = coverage_matrix(ds, &candidates, config.coverage_threshold, config.fuzzy.similarity_scale)?;
    let cover = select_rules(z, config.node_budget)?;
    let num_candidates = candidates.len();
    let rules: Vec<Rule<F>> = candidates
        .into_iter()
        .zip(cover.selected())
        .filter_map(|(r, &keep)| keep.then_some(r))
        .collect();
    Ok(Ruleset {
        attributes: ds.attribute_names().to_vec(),
        class_vocabulary: ds.class_vocabulary().to_vec(),
        class_counts: ds.class_counts(),
        theta: config.coverage_threshold,
        rules,
        normalization: ds.normalization().clone(),
        config: *config,
        order: order.to_vec(),
        source: RulesetSource::default(),
        candidate_rules: num_candidates,
        optimal: cover.solution.optimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{positive_region, Implicator, TNorm};
    use proptest::prelude::*;
    use ConditionKind::*;

    fn sys(rows: Vec<Vec<f64>>, labels: Vec<usize>) -> DecisionSystem<f64> {
        let k = labels.iter().max().map_or(1, |m| m + 1);
        DecisionSystem::from_normalized(rows, labels, (0..k).map(|c| format!("c{c}")).collect()).unwrap()
    }

    /// Shortening written directly from the definition: every trial is a
    /// full subset test over all objects.
    fn naive_prune(ds: &DecisionSystem<f64>, u: usize, order: &[usize], cfg: &FrriConfig<f64>) -> Rule<f64> {
        let mut rule = total_rule(ds, u, &cfg.fuzzy).unwrap();
        let scale = cfg.fuzzy.similarity_scale;
        for &a in order {
            for kind in ConditionKind::TRIAL_ORDER {
                rule.kinds[a] = kind;
                if is_consistent(ds, &rule, cfg.consistency_tolerance, scale).unwrap() {
                    break;
                }
                rule.kinds[a] = Similar;
            }
        }
        rule
    }

    #[test]
    fn consequent_degree_by_hand() {
        let ds = sys(vec![vec![0.2], vec![0.6]], vec![0, 1]);
        let r = total_rule(&ds, 0, &FuzzyParams::default()).unwrap();
        // I(0.6, 0) with the Lukasiewicz implicator
        assert!((r.consequent_degree - 0.4).abs() < 1e-12);
        assert_eq!(r.kinds, vec![Similar]);
        let one = sys(vec![vec![0.0, 0.3], vec![1.0, 0.9]], vec![0, 0]);
        assert_eq!(total_rule(&one, 1, &FuzzyParams::default()).unwrap().consequent_degree, 1.0);
        assert!(total_rule(&one, 2, &FuzzyParams::default()).is_err());
    }

    #[test]
    fn consequent_degrees_equal_positive_region() {
        let ds = sys(
            vec![vec![0.1, 0.9], vec![0.4, 0.2], vec![0.8, 0.5], vec![0.0, 0.0], vec![1.0, 1.0]],
            vec![0, 1, 0, 1, 1],
        );
        for t in [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz] {
            for i in [Implicator::KleeneDienes, Implicator::Lukasiewicz, Implicator::Godel] {
                let p = FuzzyParams { tnorm: t, implicator: i, similarity_scale: 0.7 };
                let pos = positive_region(&ds, &[0, 1], &p).unwrap();
                assert_eq!(consequent_degrees(&ds, &p), pos.memberships());
            }
        }
    }

    #[test]
    fn consistency_examples() {
        let one = sys(vec![vec![0.1], vec![0.7]], vec![0, 0]);
        let r = total_rule(&one, 0, &FuzzyParams::default()).unwrap();
        assert!(is_consistent(&one, &r, 0.0, 1.0).unwrap());

        // v2 is of the other class and 0.5 away: S(v2) = min(0.5, 0.2) > 0
        let ds = sys(vec![vec![0.0], vec![0.2], vec![0.5]], vec![0, 0, 1]);
        let mut r = total_rule(&ds, 0, &FuzzyParams::default()).unwrap();
        r.consequent_degree = 0.2;
        assert!(!is_consistent(&ds, &r, 0.0, 1.0).unwrap());
        assert!(is_consistent(&ds, &r, 0.2, 1.0).unwrap());
        r.consequent_degree = 0.0;
        assert!(is_consistent(&ds, &r, 0.0, 1.0).unwrap());
    }

    #[test]
    fn noise_attribute_dropped() {
        let ds = sys(
            vec![vec![0.0, 0.4], vec![0.0, 0.4], vec![1.0, 0.6], vec![1.0, 0.6]],
            vec![0, 0, 1, 1],
        );
        let cfg = FrriConfig::default();
        for u in 0..4 {
            let r = rule_prune(&ds, u, &[0, 1], &cfg).unwrap();
            assert_eq!(r.kinds[1], Unused);
            assert_eq!(r, naive_prune(&ds, u, &[0, 1], &cfg));
        }
        assert_eq!(rule_prune(&ds, 0, &[0, 1], &cfg).unwrap().kinds, vec![Dominant, Unused]);
        assert_eq!(rule_prune(&ds, 2, &[0, 1], &cfg).unwrap().kinds, vec![Dominated, Unused]);
        assert!(rule_prune(&ds, 0, &[0, 0], &cfg).is_err());
        assert!(rule_prune(&ds, 0, &[0], &cfg).is_err());
    }

    #[test]
    fn single_class_rules_are_empty() {
        let ds = sys(vec![vec![0.0, 0.3], vec![1.0, 0.2], vec![0.5, 1.0]], vec![0, 0, 0]);
        let rules = shorten_all(&ds, &[1, 0], &FrriConfig::default()).unwrap();
        assert_eq!(rules.len(), 3);
        assert!(rules.iter().all(|r| r.is_empty()));
        let z = coverage_matrix(&ds, &rules, 0.5, 1.0).unwrap();
        assert!(z.iter().flatten().all(|&c| c));
        let fitted = fit(&ds, &[0, 1], &FrriConfig::default()).unwrap();
        assert_eq!(fitted.len(), 1);
    }

    #[test]
    fn full_threshold_gives_identity() {
        let ds = sys(vec![vec![0.1], vec![0.3], vec![0.6], vec![0.9]], vec![0, 1, 0, 1]);
        let rules = shorten_all(&ds, &[0], &FrriConfig::default()).unwrap();
        assert!(rules.iter().all(|r| r.consequent_degree < 1.0));
        let z = coverage_matrix(&ds, &rules, 1.0, 1.0).unwrap();
        for (u, row) in z.iter().enumerate() {
            for (v, &c) in row.iter().enumerate() {
                assert_eq!(c, u == v);
            }
        }
        assert!(coverage_matrix(&ds, &rules, 0.0, 1.0).is_err());
        assert_eq!(select_rules(z, 1000).unwrap().solution.objective, 4);
    }

    #[test]
    fn select_matches_exhaustive() {
        let z: Vec<Vec<bool>> = vec![
            vec![true, true, false, false, true],
            vec![false, true, true, false, false],
            vec![false, false, true, true, false],
            vec![true, false, false, true, false],
            vec![false, false, true, false, true],
        ];
        let best = (0u32..32)
            .filter(|m| (0..5).all(|v| (0..5).any(|u| m >> u & 1 == 1 && z[u][v])))
            .map(u32::count_ones)
            .min()
            .unwrap();
        assert_eq!(select_rules(z, 1000).unwrap().solution.objective as u32, best);
    }

    fn small_system() -> impl Strategy<Value = (DecisionSystem<f64>, Vec<usize>)> {
        (2usize..9, 1usize..4).prop_flat_map(|(n, m)| {
            (
                prop::collection::vec(prop::collection::vec(prop_oneof![Just(0.0), Just(1.0), 0.0f64..=1.0], m), n),
                prop::collection::vec(0usize..3, n),
                Just((0..m).collect::<Vec<_>>()).prop_shuffle(),
            )
                .prop_map(|(rows, labels, order)| {
                    let mut labels = labels;
                    labels[0] = 0;
                    (sys(rows, labels), order)
                })
        })
    }

    proptest! {
        #[test]
        fn fast_prune_equals_definition((ds, order) in small_system(), eps in prop_oneof![Just(0.0), 0.0f64..0.5], scale in 0.2f64..=1.0) {
            let mut cfg = FrriConfig { consistency_tolerance: eps, ..FrriConfig::default() };
            cfg.fuzzy.similarity_scale = scale;
            for u in 0..ds.num_objects() {
                let fast = rule_prune(&ds, u, &order, &cfg).unwrap();
                prop_assert_eq!(&fast, &naive_prune(&ds, u, &order, &cfg));
                let total = total_rule(&ds, u, &cfg.fuzzy).unwrap();
                if is_consistent(&ds, &total, eps, scale).unwrap() {
                    prop_assert!(is_consistent(&ds, &fast, eps, scale).unwrap());
                }
                prop_assert!(fast.len() <= total.len());
            }
        }

        #[test]
        fn fitted_rules_cover_training((ds, order) in small_system(), theta in 0.05f64..=1.0) {
            let cfg = FrriConfig { coverage_threshold: theta, ..FrriConfig::default() };
            let rs = fit(&ds, &order, &cfg).unwrap();
            prop_assert!(!rs.is_empty() && rs.len() <= ds.num_objects());
            for v in 0..ds.num_objects() {
                prop_assert!(rs.rules.iter().any(|r| r.generator == v
                    || r.covering_membership(ds.row(v), 1.0).unwrap() >= theta));
            }
        }
    }
}
