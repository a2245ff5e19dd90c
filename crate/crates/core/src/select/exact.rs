//! Exhaustive optimum for small instances, used to check approximation ratios.
//!
//! Coverage is recomputed from the support sets of the live subgraphs, not
//! from the index's gain counters.

use crate::budget::BudgetVector;
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::motif::SubgraphIndex;

pub const MAX_EXACT_CANDIDATES: usize = 22;
pub const MAX_EXACT_BUDGET: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSolution {
    pub protectors: Vec<Edge>,
    pub gain: usize,
}

type Bits = Vec<u64>;

fn union_count(acc: &Bits, add: &Bits, out: &mut Bits) -> usize {
    let mut count = 0;
    for ((o, a), b) in out.iter_mut().zip(acc).zip(add) {
        *o = a | b;
        count += o.count_ones() as usize;
    }
    count
}

struct Search<'a> {
    covers: &'a [Bits],
    best_gain: usize,
    best_set: Vec<usize>,
    stack: Vec<usize>,
}

impl Search<'_> {
    fn dfs(&mut self, start: usize, left: usize, acc: &Bits, gain: usize) {
        if gain > self.best_gain {
            self.best_gain = gain;
            self.best_set = self.stack.clone();
        }
        if left == 0 {
            return;
        }
        let mut next = vec![0u64; acc.len()];
        for i in start..self.covers.len() {
            let g = union_count(acc, &self.covers[i], &mut next);
            self.stack.push(i);
            self.dfs(i + 1, left - 1, &next, g);
            self.stack.pop();
        }
    }
}

/// Maximum number of live subgraphs broken by at most `k` deletions.
/// Among optimal sets the lexicographically first is returned.
pub fn exact_optimum(index: &SubgraphIndex, k: usize) -> Result<ExactSolution> {
    let candidates: Vec<Edge> = index.candidate_edges().into_iter().collect();
    if candidates.len() > MAX_EXACT_CANDIDATES || k > MAX_EXACT_BUDGET {
        return Err(Error::InstanceTooLarge {
            candidates: candidates.len(),
            budget: k,
            max_candidates: MAX_EXACT_CANDIDATES,
            max_budget: MAX_EXACT_BUDGET,
        });
    }
    let live: Vec<_> = index.live_subgraphs().collect();
    let words = live.len().div_ceil(64).max(1);
    let covers: Vec<Bits> = candidates
        .iter()
        .map(|&e| {
            let mut bits = vec![0u64; words];
            for (i, sg) in live.iter().enumerate() {
                if sg.contains(e) {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            bits
        })
        .collect();
    let mut search = Search {
        covers: &covers,
        best_gain: 0,
        best_set: Vec::new(),
        stack: Vec::new(),
    };
    search.dfs(0, k, &vec![0u64; words], 0);
    Ok(ExactSolution {
        protectors: search.best_set.iter().map(|&i| candidates[i]).collect(),
        gain: search.best_gain,
    })
}

/// Optimum under per-target sub-budgets. Any protector may be charged to any
/// target, so a set is feasible exactly when its size is within the summed
/// sub-budgets.
pub fn exact_optimum_mlbt(index: &SubgraphIndex, budgets: &BudgetVector) -> Result<ExactSolution> {
    budgets.check_len(index.target_count())?;
    exact_optimum(index, budgets.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{load_edge_list, FormatHint, TargetSet};
    use crate::motif::MotifKind;

    #[test]
    fn whole_budget_covers_everything() {
        let g = load_edge_list("1 2\n1 3\n3 2\n1 4\n4 2\n".as_bytes(), FormatHint::Auto)
            .unwrap()
            .0;
        let t = TargetSet::from_labels(&g, [(1, 2)]).unwrap();
        let h = g.remove_targets(&t).unwrap();
        let index = SubgraphIndex::build(&h, &t, MotifKind::Triangle).unwrap();
        let all = exact_optimum(&index, 4).unwrap();
        assert_eq!(all.gain, index.total_live());
        let one = exact_optimum(&index, 1).unwrap();
        assert_eq!(one.gain, 1);
        assert_eq!(one.protectors, vec![h.pair(1, 3).unwrap()]);
        assert!(matches!(
            exact_optimum(&index, 7),
            Err(Error::InstanceTooLarge { .. })
        ));
    }
}
