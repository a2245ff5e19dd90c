//! Protector selection: the three greedy algorithms, random baselines and an
//! exhaustive oracle for small instances.
//!
//! Every selector works on a target-free graph. The full variants scan every
//! remaining edge of the graph when looking for the best protector, while the
//! restricted variants only scan support edges of live target subgraphs.
//! Edges outside those subgraphs always have zero gain, so both scans pick the
//! same protectors under the same tie-break.
//!
//! Ties are broken towards the earlier target and then the smaller canonical
//! edge, which makes every selector deterministic.

mod baseline;
mod exact;

use std::cmp::Reverse;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub use baseline::{rd_baseline, rdt_baseline};
pub use exact::{
    exact_optimum, exact_optimum_mlbt, ExactSolution, MAX_EXACT_BUDGET, MAX_EXACT_CANDIDATES,
};

use crate::budget::BudgetVector;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, TargetSet};
use crate::motif::{MotifKind, SubgraphIndex};
use crate::objective::{GainRank, ObjectiveState};

/// Order in which the within-target greedy visits targets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VisitOrder {
    /// Target-set order.
    #[default]
    Input,
    /// Highest initial similarity first, ties by target-set order.
    DescendingSimilarity,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SelectOptions {
    /// Scan only support edges of live target subgraphs.
    pub restricted: bool,
    /// Rebuild the index after every deletion and compare. Slow.
    pub verify: bool,
    pub visit_order: VisitOrder,
}

impl SelectOptions {
    pub fn full() -> SelectOptions {
        SelectOptions::default()
    }

    pub fn restricted() -> SelectOptions {
        SelectOptions {
            restricted: true,
            ..SelectOptions::default()
        }
    }

    pub fn verified(mut self) -> SelectOptions {
        self.verify = true;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Sgb,
    Ct,
    Wt,
    Rd,
    Rdt,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Sgb, Method::Ct, Method::Wt, Method::Rd, Method::Rdt];

    pub fn name(self) -> &'static str {
        match self {
            Method::Sgb => "sgb",
            Method::Ct => "ct",
            Method::Wt => "wt",
            Method::Rd => "rd",
            Method::Rdt => "rdt",
        }
    }

    /// Whether the method consumes a per-target budget vector.
    pub fn uses_division(self) -> bool {
        matches!(self, Method::Ct | Method::Wt)
    }

    /// Whether the full/restricted distinction applies.
    pub fn has_restriction(self) -> bool {
        !matches!(self, Method::Rd | Method::Rdt)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidValue {
                what: "method",
                value: s.to_string(),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pick {
    pub edge: Edge,
    /// Target the protector was charged to, for the budget-vector methods.
    pub charged_to: Option<Edge>,
    pub gain: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectionResult {
    pub protectors: Vec<Pick>,
    /// Total similarity before the first step and after each step.
    pub trace: Vec<usize>,
    pub final_similarity: usize,
    pub budget_used: usize,
    /// Number of steps after which total similarity first reached zero.
    pub k_star: Option<usize>,
    /// Time elapsed since the start of selection, after each step.
    pub step_elapsed: Vec<Duration>,
}

impl SelectionResult {
    pub fn initial_similarity(&self) -> usize {
        self.trace[0]
    }

    pub fn total_gain(&self) -> usize {
        self.protectors.iter().map(|p| p.gain).sum()
    }

    pub fn gains(&self) -> Vec<usize> {
        self.protectors.iter().map(|p| p.gain).collect()
    }

    pub fn protector_edges(&self) -> Vec<Edge> {
        self.protectors.iter().map(|p| p.edge).collect()
    }

    pub fn elapsed(&self) -> Duration {
        self.step_elapsed.last().copied().unwrap_or_default()
    }

    /// `g` with the selected protectors deleted.
    pub fn released(&self, g: &Graph) -> Result<Graph> {
        let mut out = g.clone();
        for p in &self.protectors {
            out.delete_edge(p.edge)?;
        }
        Ok(out)
    }

    /// Writes the selection as CSV with labelled edges. The `elapsed_ms`
    /// column stays empty unless `timings` is set, keeping output
    /// reproducible byte for byte.
    pub fn write_csv<W: Write>(&self, g: &Graph, mut out: W, timings: bool) -> Result<()> {
        writeln!(
            out,
            "step,edge_u,edge_v,charged_target_u,charged_target_v,gain,total_similarity,elapsed_ms"
        )?;
        for (i, p) in self.protectors.iter().enumerate() {
            let (a, b) = g.edge_labels(p.edge);
            let (ta, tb) = match p.charged_to {
                Some(t) => {
                    let (x, y) = g.edge_labels(t);
                    (x.to_string(), y.to_string())
                }
                None => (String::new(), String::new()),
            };
            let elapsed = if timings {
                format!("{:.3}", self.step_elapsed[i].as_secs_f64() * 1e3)
            } else {
                String::new()
            };
            writeln!(
                out,
                "{},{a},{b},{ta},{tb},{},{},{elapsed}",
                i + 1,
                p.gain,
                self.trace[i + 1]
            )?;
        }
        Ok(())
    }
}

/// Shared state of one selection run.
pub(crate) struct Run {
    graph: Graph,
    state: ObjectiveState,
    opts: SelectOptions,
    picks: Vec<Pick>,
    trace: Vec<usize>,
    elapsed: Vec<Duration>,
    start: Instant,
}

impl Run {
    pub(crate) fn new(
        g: &Graph,
        targets: &TargetSet,
        kind: MotifKind,
        opts: SelectOptions,
    ) -> Result<Run> {
        let index = SubgraphIndex::build(g, targets, kind)?;
        Ok(Run::from_index(g, index, opts))
    }

    pub(crate) fn from_index(g: &Graph, index: SubgraphIndex, opts: SelectOptions) -> Run {
        let state = ObjectiveState::new(index);
        Run {
            graph: g.clone(),
            trace: vec![state.total_similarity()],
            state,
            opts,
            picks: Vec::new(),
            elapsed: Vec::new(),
            start: Instant::now(),
        }
    }

    pub(crate) fn state(&self) -> &ObjectiveState {
        &self.state
    }

    /// Calls `f` with every protector the scan considers and its total gain.
    fn scan(&self, mut f: impl FnMut(Edge, usize)) {
        let index = self.state.index();
        if self.opts.restricted {
            for (e, gain) in index.candidate_iter() {
                f(e, gain);
            }
        } else {
            for e in self.graph.edges() {
                f(e, index.live_containing(e));
            }
        }
    }

    pub(crate) fn commit(&mut self, p: Edge, charged_to: Option<usize>) -> Result<usize> {
        let broken = self.state.delete(p, charged_to)?;
        self.graph.delete_edge(p)?;
        let charged = charged_to.map(|ti| self.state.index().targets()[ti]);
        self.picks.push(Pick {
            edge: p,
            charged_to: charged,
            gain: broken.total(),
        });
        self.trace.push(self.state.total_similarity());
        self.elapsed.push(self.start.elapsed());
        if self.opts.verify {
            self.state.index().assert_consistent(&self.graph);
        }
        Ok(broken.total())
    }

    pub(crate) fn finish(self) -> SelectionResult {
        let k_star = self.trace.iter().position(|&s| s == 0);
        SelectionResult {
            budget_used: self.picks.len(),
            final_similarity: *self.trace.last().expect("trace starts non-empty"),
            protectors: self.picks,
            trace: self.trace,
            k_star,
            step_elapsed: self.elapsed,
        }
    }
}

/// Single-global-budget greedy: repeatedly delete the edge breaking the most
/// live target subgraphs, up to `k` deletions or until no edge has gain.
pub fn sgb_greedy(
    g: &Graph,
    targets: &TargetSet,
    kind: MotifKind,
    k: usize,
    opts: SelectOptions,
) -> Result<SelectionResult> {
    let mut run = Run::new(g, targets, kind, opts)?;
    sgb_steps(&mut run, k)?;
    Ok(run.finish())
}

fn sgb_steps(run: &mut Run, k: usize) -> Result<()> {
    for _ in 0..k {
        let mut best: Option<(usize, Reverse<Edge>)> = None;
        run.scan(|e, gain| {
            let key = (gain, Reverse(e));
            if gain > 0 && best.is_none_or(|b| key > b) {
                best = Some(key);
            }
        });
        let Some((_, Reverse(p))) = best else {
            break;
        };
        run.commit(p, None)?;
    }
    Ok(())
}

/// Cross-target greedy: repeatedly pick the (target, protector) pair with the
/// best [`GainRank`] among targets whose sub-budget is not used up, and
/// charge the protector to that target.
pub fn ct_greedy(
    g: &Graph,
    targets: &TargetSet,
    kind: MotifKind,
    budgets: &BudgetVector,
    opts: SelectOptions,
) -> Result<SelectionResult> {
    budgets.check_len(targets.len())?;
    let mut run = Run::new(g, targets, kind, opts)?;
    let n = targets.len();
    let mut charges = vec![0usize; n];
    let mut active: Vec<bool> = budgets.per_target.iter().map(|&b| b > 0).collect();
    let mut own = vec![0usize; n];
    let mut touched = Vec::new();
    while let Some(first_active) = active.iter().position(|&a| a) {
        let mut best: Option<(GainRank, Reverse<usize>, Reverse<Edge>)> = None;
        let index = run.state().index();
        run.scan(|e, total| {
            if total == 0 {
                return;
            }
            for ti in index.live_owners(e) {
                if own[ti] == 0 {
                    touched.push(ti);
                }
                own[ti] += 1;
            }
            let mut pick = (0usize, Reverse(first_active));
            for &ti in &touched {
                if active[ti] && (own[ti], Reverse(ti)) > pick {
                    pick = (own[ti], Reverse(ti));
                }
            }
            for ti in touched.drain(..) {
                own[ti] = 0;
            }
            let rank = GainRank {
                own: pick.0,
                cross: total - pick.0,
            };
            let key = (rank, pick.1, Reverse(e));
            if best.is_none_or(|b| key > b) {
                best = Some(key);
            }
        });
        let Some((rank, Reverse(ti), Reverse(p))) = best else {
            break;
        };
        if rank.is_zero() {
            break;
        }
        run.commit(p, Some(ti))?;
        charges[ti] += 1;
        if charges[ti] >= budgets.get(ti) {
            active[ti] = false;
        }
    }
    Ok(run.finish())
}

/// Within-target greedy: visit targets one at a time and spend each one's
/// sub-budget on the protectors ranking best for that target. Once a target
/// has nothing left of its own, its remaining picks go to the protector
/// breaking the most subgraphs of other targets.
pub fn wt_greedy(
    g: &Graph,
    targets: &TargetSet,
    kind: MotifKind,
    budgets: &BudgetVector,
    opts: SelectOptions,
) -> Result<SelectionResult> {
    budgets.check_len(targets.len())?;
    let mut run = Run::new(g, targets, kind, opts)?;
    let mut order: Vec<usize> = (0..targets.len()).collect();
    if opts.visit_order == VisitOrder::DescendingSimilarity {
        let initial = run.state().index().live_counts().to_vec();
        order.sort_by_key(|&ti| (Reverse(initial[ti]), ti));
    }
    'targets: for ti in order {
        for _ in 0..budgets.get(ti) {
            if run.state().total_similarity() == 0 {
                break 'targets;
            }
            let mut best: Option<(GainRank, Reverse<Edge>)> = None;
            let state = run.state();
            run.scan(|e, total| {
                if total == 0 {
                    return;
                }
                let key = (state.rank_for(e, ti), Reverse(e));
                if best.is_none_or(|b| key > b) {
                    best = Some(key);
                }
            });
            match best {
                Some((rank, Reverse(p))) if !rank.is_zero() => {
                    run.commit(p, Some(ti))?;
                }
                _ => break 'targets,
            }
        }
    }
    Ok(run.finish())
}

/// Smallest greedy budget reaching zero total similarity: the number of steps
/// the restricted single-budget greedy takes when run to exhaustion.
pub fn critical_budget(g: &Graph, targets: &TargetSet, kind: MotifKind) -> Result<usize> {
    let result = sgb_greedy(g, targets, kind, usize::MAX, SelectOptions::restricted())?;
    debug_assert_eq!(result.final_similarity, 0);
    Ok(result.budget_used)
}
