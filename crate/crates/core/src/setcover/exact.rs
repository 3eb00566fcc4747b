//! Branch and bound for minimum set cover.
//!
//! Root preprocessing removes sets dominated by another set and forces sets
//! that are the only cover of some element. The search branches on the
//! uncovered element with the fewest available sets; in branch `i` the set
//! is taken and the sets of branches `0..i` are excluded.

use super::bits::Bits;
use super::{greedy_pick, lower_bound, remove_redundant, SetCoverProblem, SetCoverSolution};
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    pub node_budget: u64,
    /// Dominated-set removal and singleton forcing before the search.
    pub preprocess: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            preprocess: true,
        }
    }
}

pub fn solve_exact(p: &SetCoverProblem, node_budget: u64) -> Result<SetCoverSolution> {
    solve_exact_with(
        p,
        ExactOptions {
            node_budget,
            ..ExactOptions::default()
        },
    )
}

struct Reduced {
    forced: Vec<usize>,
    candidates: Vec<usize>,
    uncovered: Bits,
}

fn preprocess(p: &SetCoverProblem) -> Reduced {
    let mut forced = Vec::new();
    let mut uncovered = Bits::full(p.num_elements());
    let mut alive: Vec<usize> = (0..p.num_sets()).collect();
    loop {
        alive.retain(|&s| p.bits(s).intersects(&uncovered));
        // drop sets whose useful part is contained in another's; equal sets
        // keep the lowest index
        let before = alive.len();
        let snapshot = alive.clone();
        alive.retain(|&s| {
            !snapshot.iter().any(|&t| {
                t != s
                    && p.bits(s).subset_within(p.bits(t), &uncovered)
                    && (t < s || !p.bits(t).subset_within(p.bits(s), &uncovered))
            })
        });
        let mut changed = alive.len() != before;
        for e in uncovered.clone().iter() {
            if !uncovered.contains(e) {
                continue;
            }
            let mut covering = alive.iter().filter(|&&s| p.bits(s).contains(e));
            if let (Some(&only), None) = (covering.next(), covering.next()) {
                forced.push(only);
                uncovered.remove_all(p.bits(only));
                alive.retain(|&s| s != only);
                changed = true;
            }
        }
        if !changed || uncovered.is_empty() {
            break;
        }
    }
    alive.retain(|&s| p.bits(s).intersects(&uncovered));
    Reduced {
        forced,
        candidates: alive,
        uncovered,
    }
}

struct Search<'a> {
    p: &'a SetCoverProblem,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    excluded: Vec<bool>,
    gains: Vec<usize>,
}

impl Search<'_> {
    fn dfs(&mut self, uncovered: &Bits, alive: &[usize], chosen: &mut Vec<usize>) {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        if uncovered.is_empty() {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if chosen.len() + 1 >= self.best.len() {
            return;
        }
        let lb = lower_bound(self.p, alive, uncovered);
        if lb == usize::MAX || chosen.len() + lb >= self.best.len() {
            return;
        }

        for &s in alive {
            self.gains[s] = self.p.bits(s).intersection_count(uncovered);
        }
        let mut branch_elem = None;
        let mut fewest = usize::MAX;
        for e in uncovered.iter() {
            let c = alive.iter().filter(|&&s| self.p.bits(s).contains(e)).count();
            if c < fewest {
                fewest = c;
                branch_elem = Some(e);
                if c <= 1 {
                    break;
                }
            }
        }
        let Some(e) = branch_elem else { return };
        if fewest == 0 {
            return;
        }
        let mut branches: Vec<usize> = alive.iter().copied().filter(|&s| self.p.bits(s).contains(e)).collect();
        branches.sort_by(|&a, &b| self.gains[b].cmp(&self.gains[a]).then(a.cmp(&b)));

        for (i, &s) in branches.iter().enumerate() {
            let rest = uncovered.difference(self.p.bits(s));
            let next_alive: Vec<usize> = alive
                .iter()
                .copied()
                .filter(|&t| t != s && !self.excluded[t] && self.p.bits(t).intersects(&rest))
                .collect();
            chosen.push(s);
            self.dfs(&rest, &next_alive, chosen);
            chosen.pop();
            if self.exhausted {
                break;
            }
            self.excluded[s] = true;
            let _ = i;
        }
        for &s in &branches {
            self.excluded[s] = false;
        }
    }
}

/// Exact solver. When the node budget runs out the best cover found so far
/// is returned with `optimal = false`.
pub fn solve_exact_with(p: &SetCoverProblem, opts: ExactOptions) -> Result<SetCoverSolution> {
    p.check_feasible()?;
    let reduced = if opts.preprocess {
        preprocess(p)
    } else {
        Reduced {
            forced: Vec::new(),
            candidates: (0..p.num_sets()).collect(),
            uncovered: Bits::full(p.num_elements()),
        }
    };

    let mut incumbent = greedy_pick(p, &reduced.candidates, reduced.uncovered.clone())
        .ok_or(Error::Infeasible { element: 0 })?;
    remove_redundant(p, &mut incumbent, &reduced.uncovered);

    let mut search = Search {
        p,
        best: incumbent,
        nodes: 0,
        budget: opts.node_budget,
        exhausted: false,
        excluded: vec![false; p.num_sets()],
        gains: vec![0; p.num_sets()],
    };
    if !reduced.uncovered.is_empty() {
        // one more than the incumbent so equal-size covers are not re-searched
        let root_alive = reduced.candidates.clone();
        let mut chosen = Vec::new();
        search.dfs(&reduced.uncovered, &root_alive, &mut chosen);
    }

    let mut all = reduced.forced;
    all.extend(&search.best);
    let solution = SetCoverSolution::from_indices(p.num_sets(), &all, !search.exhausted, search.nodes);
    debug_assert!(p.is_cover(&solution.selected));
    Ok(solution)
}
