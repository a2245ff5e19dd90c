//! Division of a global deletion budget into per-target sub-budgets.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, TargetSet};
use crate::motif::SubgraphIndex;

/// Sub-budgets aligned with target order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BudgetVector {
    pub per_target: Vec<usize>,
}

impl BudgetVector {
    pub fn new(per_target: Vec<usize>) -> BudgetVector {
        BudgetVector { per_target }
    }

    pub fn zeros(n: usize) -> BudgetVector {
        BudgetVector {
            per_target: vec![0; n],
        }
    }

    pub fn total(&self) -> usize {
        self.per_target.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.per_target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_target.is_empty()
    }

    pub fn get(&self, ti: usize) -> usize {
        self.per_target[ti]
    }

    pub(crate) fn check_len(&self, targets: usize) -> Result<()> {
        if self.per_target.len() != targets {
            return Err(Error::BudgetLength {
                expected: targets,
                got: self.per_target.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Division {
    /// Proportional to each target's subgraph count, capped by it.
    Tbd,
    /// Proportional to the degree product of each target's endpoints.
    Dbd,
}

impl Division {
    pub fn name(self) -> &'static str {
        match self {
            Division::Tbd => "tbd",
            Division::Dbd => "dbd",
        }
    }
}

impl fmt::Display for Division {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Division {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tbd" => Ok(Division::Tbd),
            "dbd" => Ok(Division::Dbd),
            _ => Err(Error::InvalidValue {
                what: "division",
                value: s.to_string(),
            }),
        }
    }
}

/// Hamilton apportionment of `k` seats over `weights`, restricted to the
/// entries flagged in `eligible`. Remainder ties go to the earlier entry.
fn largest_remainder(k: usize, weights: &[u128], eligible: &[bool]) -> Vec<usize> {
    let total: u128 = weights
        .iter()
        .zip(eligible)
        .filter(|(_, &e)| e)
        .map(|(&w, _)| w)
        .sum();
    let mut seats = vec![0usize; weights.len()];
    if total == 0 || k == 0 {
        return seats;
    }
    let k128 = k as u128;
    let mut remainders = Vec::new();
    let mut assigned = 0usize;
    for (i, (&w, &e)) in weights.iter().zip(eligible).enumerate() {
        if !e {
            continue;
        }
        let q = k128 * w;
        seats[i] = (q / total) as usize;
        assigned += seats[i];
        remainders.push((q % total, i));
    }
    remainders.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for &(_, i) in remainders.iter().take(k - assigned) {
        seats[i] += 1;
    }
    seats
}

/// Target-subgraph-based division: `k_t` proportional to `|W_t|` and never
/// above it; seats freed by the cap are re-apportioned among the rest.
pub fn tbd(k: usize, index: &SubgraphIndex) -> BudgetVector {
    let caps: Vec<usize> = index.live_counts().to_vec();
    let weights: Vec<u128> = caps.iter().map(|&c| c as u128).collect();
    let mut seats = vec![0usize; caps.len()];
    let mut eligible: Vec<bool> = caps.iter().map(|&c| c > 0).collect();
    let mut remaining = k;
    loop {
        let round = largest_remainder(remaining, &weights, &eligible);
        let mut surplus = 0;
        let mut capped_any = false;
        for i in 0..seats.len() {
            if !eligible[i] {
                continue;
            }
            let want = seats[i] + round[i];
            if want >= caps[i] {
                surplus += want - caps[i];
                seats[i] = caps[i];
                eligible[i] = false;
                capped_any = true;
            } else {
                seats[i] = want;
            }
        }
        if !capped_any || surplus == 0 || !eligible.iter().any(|&e| e) {
            break;
        }
        remaining = surplus;
    }
    BudgetVector::new(seats)
}

/// Degree-product-based division over the original (pre-removal) graph.
pub fn dbd(k: usize, original: &Graph, targets: &TargetSet) -> BudgetVector {
    let weights: Vec<u128> = targets
        .iter()
        .map(|t| original.degree(t.u()) as u128 * original.degree(t.v()) as u128)
        .collect();
    let eligible = vec![true; weights.len()];
    BudgetVector::new(largest_remainder(k, &weights, &eligible))
}
