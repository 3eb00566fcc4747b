//! Minimum-cardinality set cover: greedy heuristic and an exact
//! branch-and-bound solver.

mod bits;
mod exact;

pub use exact::{solve_exact, solve_exact_with, ExactOptions, DEFAULT_NODE_BUDGET};

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use bits::Bits;

/// Sets (rules) over elements (training objects). Set `s` contains element
/// `e` when `membership[s][e]` holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverProblem {
    num_elements: usize,
    sets: Vec<Bits>,
}

impl SetCoverProblem {
    /// Builds from a dense membership matrix, one row per set.
    pub fn from_matrix(membership: &[Vec<bool>]) -> Result<Self> {
        let num_elements = membership.first().map_or(0, Vec::len);
        let mut sets = Vec::with_capacity(membership.len());
        for row in membership {
            if row.len() != num_elements {
                return Err(Error::DimensionMismatch {
                    expected: num_elements,
                    found: row.len(),
                    context: "set cover membership row",
                });
            }
            let mut b = Bits::empty(num_elements);
            for (e, _) in row.iter().enumerate().filter(|(_, &m)| m) {
                b.insert(e);
            }
            sets.push(b);
        }
        Ok(SetCoverProblem { num_elements, sets })
    }

    /// Builds from explicit element lists.
    pub fn from_sets(num_elements: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut out = Vec::with_capacity(sets.len());
        for s in sets {
            let mut b = Bits::empty(num_elements);
            for &e in s {
                if e >= num_elements {
                    return Err(Error::InvalidArgument(format!(
                        "element {e} outside universe of {num_elements}"
                    )));
                }
                b.insert(e);
            }
            out.push(b);
        }
        Ok(SetCoverProblem {
            num_elements,
            sets: out,
        })
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn num_elements(&self) -> usize {
        self.num_elements
    }

    pub fn contains(&self, set: usize, element: usize) -> bool {
        self.sets[set].contains(element)
    }

    pub fn set_elements(&self, set: usize) -> Vec<usize> {
        self.sets[set].iter().collect()
    }

    pub(crate) fn bits(&self, set: usize) -> &Bits {
        &self.sets[set]
    }

    /// Errors with the first element no set covers.
    pub fn check_feasible(&self) -> Result<()> {
        let mut covered = Bits::empty(self.num_elements);
        for s in &self.sets {
            for e in s.iter() {
                covered.insert(e);
            }
        }
        match (0..self.num_elements).find(|&e| !covered.contains(e)) {
            Some(element) => Err(Error::Infeasible { element }),
            None => Ok(()),
        }
    }

    /// True when the selected sets cover every element.
    pub fn is_cover(&self, selected: &[bool]) -> bool {
        let mut uncovered = Bits::full(self.num_elements);
        for (s, _) in selected.iter().enumerate().filter(|(_, &x)| x) {
            uncovered.remove_all(&self.sets[s]);
        }
        uncovered.is_empty()
    }

    /// `p setcover <sets> <elements>` header, then one line per set with
    /// its 1-based element ids.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p setcover {} {}\n", self.num_sets(), self.num_elements);
        for s in &self.sets {
            let line: Vec<String> = s.iter().map(|e| (e + 1).to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('c'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing problem line".into(),
        })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let bad_header = || Error::Parse {
            line: hline + 1,
            message: format!("expected `p setcover <sets> <elements>`, got `{header}`"),
        };
        if parts.len() != 4 || parts[0] != "p" || parts[1] != "setcover" {
            return Err(bad_header());
        }
        let num_sets: usize = parts[2].parse().map_err(|_| bad_header())?;
        let num_elements: usize = parts[3].parse().map_err(|_| bad_header())?;
        let mut sets = Vec::with_capacity(num_sets);
        for (i, line) in text.lines().enumerate().skip(hline + 1) {
            if line.trim_start().starts_with('c') {
                continue;
            }
            if sets.len() == num_sets {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(Error::Parse {
                    line: i + 1,
                    message: "more set lines than declared".into(),
                });
            }
            let elems = line
                .split_whitespace()
                .map(|t| match t.parse::<usize>() {
                    Ok(e) if e >= 1 && e <= num_elements => Ok(e - 1),
                    _ => Err(Error::Parse {
                        line: i + 1,
                        message: format!("bad element id `{t}`"),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            sets.push(elems);
        }
        if sets.len() != num_sets {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("expected {num_sets} set lines, found {}", sets.len()),
            });
        }
        SetCoverProblem::from_sets(num_elements, &sets)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverSolution {
    pub selected: Vec<bool>,
    pub objective: usize,
    /// True when the objective is proven minimal.
    pub optimal: bool,
    /// Branch-and-bound nodes explored (0 for the greedy solver).
    pub nodes: u64,
}

impl SetCoverSolution {
    fn from_indices(num_sets: usize, chosen: &[usize], optimal: bool, nodes: u64) -> Self {
        let mut selected = vec![false; num_sets];
        for &s in chosen {
            selected[s] = true;
        }
        SetCoverSolution {
            objective: selected.iter().filter(|&&x| x).count(),
            selected,
            optimal,
            nodes,
        }
    }

    pub fn selected_indices(&self) -> Vec<usize> {
        (0..self.selected.len()).filter(|&s| self.selected[s]).collect()
    }
}

/// Largest-uncovered-first greedy on the sets in `candidates`, lowest index
/// on ties. Returns chosen set indices in pick order.
pub(crate) fn greedy_pick(p: &SetCoverProblem, candidates: &[usize], mut uncovered: Bits) -> Option<Vec<usize>> {
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let mut best = None;
        let mut best_gain = 0;
        for &s in candidates {
            let gain = p.sets[s].intersection_count(&uncovered);
            if gain > best_gain {
                best_gain = gain;
                best = Some(s);
            }
        }
        let s = best?;
        uncovered.remove_all(&p.sets[s]);
        chosen.push(s);
    }
    Some(chosen)
}

/// Drops chosen sets whose elements are all covered by the others, trying the
/// latest picks first.
pub(crate) fn remove_redundant(p: &SetCoverProblem, chosen: &mut Vec<usize>, required: &Bits) {
    let mut i = chosen.len();
    while i > 0 {
        i -= 1;
        let mut rest = required.clone();
        for (j, &s) in chosen.iter().enumerate() {
            if j != i {
                rest.remove_all(&p.sets[s]);
            }
        }
        if rest.is_empty() {
            chosen.remove(i);
        }
    }
}

/// Lower bound: elements pairwise sharing no set each need their own set,
/// and no set covers more than the largest one does.
pub(crate) fn lower_bound(p: &SetCoverProblem, candidates: &[usize], uncovered: &Bits) -> usize {
    let u = uncovered.count();
    if u == 0 {
        return 0;
    }
    let max_size = candidates
        .iter()
        .map(|&s| p.sets[s].intersection_count(uncovered))
        .max()
        .unwrap_or(0);
    if max_size == 0 {
        return usize::MAX;
    }
    let size_bound = u.div_ceil(max_size);
    let mut elems: Vec<(usize, usize)> = uncovered
        .iter()
        .map(|e| (candidates.iter().filter(|&&s| p.sets[s].contains(e)).count(), e))
        .collect();
    elems.sort_unstable();
    let mut blocked = vec![false; p.num_sets()];
    let mut packing = 0;
    for (_, e) in elems {
        let covering: Vec<usize> = candidates.iter().copied().filter(|&s| p.sets[s].contains(e)).collect();
        if covering.iter().all(|&s| !blocked[s]) {
            packing += 1;
            for s in covering {
                blocked[s] = true;
            }
        }
    }
    size_bound.max(packing)
}

/// Classic greedy. Flags the result optimal only when it meets the root
/// lower bound.
pub fn solve_greedy(p: &SetCoverProblem) -> Result<SetCoverSolution> {
    p.check_feasible()?;
    let all: Vec<usize> = (0..p.num_sets()).collect();
    let uncovered = Bits::full(p.num_elements);
    let chosen = greedy_pick(p, &all, uncovered.clone()).ok_or(Error::Infeasible { element: 0 })?;
    let optimal = chosen.len() == lower_bound(p, &all, &uncovered);
    Ok(SetCoverSolution::from_indices(p.num_sets(), &chosen, optimal, 0))
}
