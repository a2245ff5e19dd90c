//! Common-neighbor link-prediction indices used as the adversary model, and
//! numeric counterexamples showing why none of them makes a monotone
//! dissimilarity under edge deletion.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, TargetSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexKind {
    Jaccard,
    Salton,
    Sorensen,
    HubPromoted,
    HubDepressed,
    Lhn,
    AdamicAdar,
    ResourceAllocation,
    /// Live triangle count, i.e. the number of common neighbors.
    MotifCount,
}

impl IndexKind {
    pub const ALL: [IndexKind; 9] = [
        IndexKind::Jaccard,
        IndexKind::Salton,
        IndexKind::Sorensen,
        IndexKind::HubPromoted,
        IndexKind::HubDepressed,
        IndexKind::Lhn,
        IndexKind::AdamicAdar,
        IndexKind::ResourceAllocation,
        IndexKind::MotifCount,
    ];

    /// The eight classical predictors, without the motif count.
    pub const PREDICTORS: [IndexKind; 8] = [
        IndexKind::Jaccard,
        IndexKind::Salton,
        IndexKind::Sorensen,
        IndexKind::HubPromoted,
        IndexKind::HubDepressed,
        IndexKind::Lhn,
        IndexKind::AdamicAdar,
        IndexKind::ResourceAllocation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IndexKind::Jaccard => "jaccard",
            IndexKind::Salton => "salton",
            IndexKind::Sorensen => "sorensen",
            IndexKind::HubPromoted => "hub_promoted",
            IndexKind::HubDepressed => "hub_depressed",
            IndexKind::Lhn => "lhn",
            IndexKind::AdamicAdar => "adamic_adar",
            IndexKind::ResourceAllocation => "resource_allocation",
            IndexKind::MotifCount => "motif_count",
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IndexKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidValue {
                what: "index",
                value: s.to_string(),
            })
    }
}

/// Score of `pair` under `index` in the released graph `g`.
pub fn score(g: &Graph, pair: Edge, index: IndexKind) -> Result<f64> {
    let (u, v) = pair.endpoints();
    for n in [u, v] {
        if n as usize >= g.node_count() {
            return Err(Error::UnknownNode(n as u64));
        }
    }
    let common = g.common_neighbors(u, v);
    let cn = common.len() as f64;
    if common.is_empty() {
        return Ok(0.0);
    }
    let (du, dv) = (g.degree(u) as f64, g.degree(v) as f64);
    let s = match index {
        IndexKind::Jaccard => {
            let union = du + dv - cn - if g.has_edge(u, v) { 2.0 } else { 0.0 };
            cn / union
        }
        IndexKind::Salton => cn / (du * dv).sqrt(),
        IndexKind::Sorensen => 2.0 * cn / (du + dv),
        IndexKind::HubPromoted => cn / du.min(dv),
        IndexKind::HubDepressed => cn / du.max(dv),
        IndexKind::Lhn => cn / (du * dv),
        IndexKind::AdamicAdar => common
            .iter()
            .map(|&w| {
                let d = g.degree(w) as f64;
                if d <= 1.0 {
                    log::warn!("common neighbor {} has degree {d}; skipped", g.label(w));
                    0.0
                } else {
                    1.0 / d.ln()
                }
            })
            .sum(),
        IndexKind::ResourceAllocation => common.iter().map(|&w| 1.0 / g.degree(w) as f64).sum(),
        IndexKind::MotifCount => cn,
    };
    Ok(s)
}

/// Scores of every target under every index kind; rows follow target order
/// and columns follow [`IndexKind::ALL`].
#[derive(Clone, Debug, PartialEq)]
pub struct ProtectionTable {
    pub targets: Vec<Edge>,
    pub scores: Vec<[f64; 9]>,
}

impl ProtectionTable {
    pub fn get(&self, ti: usize, index: IndexKind) -> f64 {
        let col = IndexKind::ALL
            .iter()
            .position(|&k| k == index)
            .expect("known kind");
        self.scores[ti][col]
    }

    /// Whether every target scores zero under every index.
    pub fn fully_protected(&self) -> bool {
        self.scores.iter().flatten().all(|&s| s == 0.0)
    }

    pub fn write_csv<W: Write>(&self, g: &Graph, mut out: W) -> Result<()> {
        let header: Vec<&str> = IndexKind::ALL.iter().map(|k| k.name()).collect();
        writeln!(out, "target_u,target_v,{}", header.join(","))?;
        for (t, row) in self.targets.iter().zip(&self.scores) {
            let (a, b) = g.edge_labels(*t);
            let cells: Vec<String> = row.iter().map(|s| format!("{s}")).collect();
            writeln!(out, "{a},{b},{}", cells.join(","))?;
        }
        Ok(())
    }
}

pub fn evaluate_protection(g: &Graph, targets: &TargetSet) -> Result<ProtectionTable> {
    let mut scores = Vec::with_capacity(targets.len());
    for &t in targets.iter() {
        let mut row = [0.0; 9];
        for (cell, kind) in row.iter_mut().zip(IndexKind::ALL) {
            *cell = score(g, t, kind)?;
        }
        scores.push(row);
    }
    Ok(ProtectionTable {
        targets: targets.as_slice().to_vec(),
        scores,
    })
}

/// Which property an index-based dissimilarity fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A single deletion lowers the dissimilarity.
    Monotonicity,
    /// A deletion gains more on a larger deleted set than on a subset.
    Submodularity,
}

/// One numerically checked counterexample.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub index: IndexKind,
    pub violation: Violation,
    pub graph: Graph,
    pub targets: TargetSet,
    /// Dissimilarity values observed, each with the deleted protector labels.
    pub observations: Vec<(Vec<(u64, u64)>, f64)>,
    /// The two compared quantities; the property requires `lhs >= rhs`.
    pub lhs: f64,
    pub rhs: f64,
}

impl Counterexample {
    pub fn violated(&self) -> bool {
        self.lhs < self.rhs
    }
}

/// Dissimilarity of a target set under an index: `constant` minus the summed
/// scores of the targets.
pub fn index_dissimilarity(
    g: &Graph,
    targets: &TargetSet,
    index: IndexKind,
    constant: f64,
) -> Result<f64> {
    let mut total = 0.0;
    for &t in targets.iter() {
        total += score(g, t, index)?;
    }
    Ok(constant - total)
}

fn build(edges: &[(u64, u64)], targets: &[(u64, u64)]) -> (Graph, TargetSet) {
    let labels = edges.iter().chain(targets).flat_map(|&(a, b)| [a, b]);
    let all = edges.iter().chain(targets).copied();
    let (g, _) = Graph::from_labeled_edges(labels, all).expect("fixture is well formed");
    let t = TargetSet::from_labels(&g, targets.iter().copied()).expect("fixture targets");
    (g.remove_targets(&t).expect("fixture targets present"), t)
}

fn without(g: &Graph, deleted: &[(u64, u64)]) -> Graph {
    let mut h = g.clone();
    for &(a, b) in deleted {
        h.delete_edge(g.pair(a, b).expect("fixture pair"))
            .expect("fixture edge");
    }
    h
}

// Node labels for the single-target instance.
const U: u64 = 0;
const V: u64 = 1;
const W1: u64 = 2;
const W2: u64 = 3;
const A: u64 = 4;
const B: u64 = 5;
const C: u64 = 6;
const X: u64 = 7;
const Y: u64 = 8;
const Z: u64 = 9;

/// Single target (u, v) with common neighbors w1 (degree 3) and w2
/// (degree 4), d_u = 3, d_v = 4 and |Γu ∪ Γv| = 5.
pub fn single_target_instance() -> (Graph, TargetSet) {
    build(
        &[
            (U, W1),
            (U, W2),
            (U, A),
            (V, W1),
            (V, W2),
            (V, B),
            (V, C),
            (W1, X),
            (W2, Y),
            (W2, Z),
        ],
        &[(U, V)],
    )
}

/// Protectors of the single-target instance.
pub mod protectors {
    use super::*;

    /// Edge leaving a common neighbor: keeps every triangle.
    pub const P1: (u64, u64) = (W1, X);
    /// Triangle edge on the u side.
    pub const P2: (u64, u64) = (U, W1);
    /// Non-triangle edge on the u side.
    pub const P3: (u64, u64) = (U, A);
    /// Non-triangle edge on the v side.
    pub const P4: (u64, u64) = (V, B);
    /// Triangle edge on the v side.
    pub const P5: (u64, u64) = (V, W1);
}

/// Three targets sharing a degree-6 common neighbor, two of which also have
/// a private degree-2 common neighbor hanging off the hub.
pub fn shared_hub_instance() -> (Graph, TargetSet) {
    const HUB: u64 = 0;
    build(
        &[
            (HUB, 1),
            (HUB, 2),
            (HUB, 3),
            (HUB, 4),
            (HUB, 5),
            (HUB, 6),
            (1, 7),
            (3, 8),
        ],
        &[(1, 2), (3, 4), (5, 6), (HUB, 7), (HUB, 8)],
    )
}

/// The two protectors of [`shared_hub_instance`].
pub const HUB_P1: (u64, u64) = (0, 1);
pub const HUB_P2: (u64, u64) = (0, 3);

fn monotonicity_case(index: IndexKind, up: (u64, u64), down: (u64, u64)) -> Result<Counterexample> {
    let (g, t) = single_target_instance();
    let c = if matches!(index, IndexKind::AdamicAdar | IndexKind::ResourceAllocation) {
        10.0
    } else {
        1.0
    };
    let f0 = index_dissimilarity(&g, &t, index, c)?;
    let mut observations = vec![(Vec::new(), f0)];
    for p in [protectors::P1, up, down] {
        let f = index_dissimilarity(&without(&g, &[p]), &t, index, c)?;
        observations.push((vec![p], f));
    }
    let f_down = observations[3].1;
    Ok(Counterexample {
        index,
        violation: Violation::Monotonicity,
        graph: g,
        targets: t,
        observations,
        lhs: f_down,
        rhs: f0,
    })
}

/// Builds and evaluates one counterexample per predictor index, plus the
/// resource-allocation submodularity counterexample.
pub fn counterexample_suite() -> Result<Vec<Counterexample>> {
    use protectors::*;
    let mut out = Vec::new();
    for index in IndexKind::PREDICTORS {
        let (up, down) = match index {
            IndexKind::HubDepressed => (P5, P4),
            IndexKind::AdamicAdar | IndexKind::ResourceAllocation => (P2, P1),
            _ => (P2, P3),
        };
        out.push(monotonicity_case(index, up, down)?);
    }
    out.push(ra_submodularity_case()?);
    Ok(out)
}

fn ra_submodularity_case() -> Result<Counterexample> {
    let (g, t) = shared_hub_instance();
    let c = 10.0;
    let f = |deleted: &[(u64, u64)]| {
        index_dissimilarity(&without(&g, deleted), &t, IndexKind::ResourceAllocation, c)
    };
    let f_empty = f(&[])?;
    let f_b = f(&[HUB_P1])?;
    let f_a_p = f(&[HUB_P2])?;
    let f_b_p = f(&[HUB_P1, HUB_P2])?;
    Ok(Counterexample {
        index: IndexKind::ResourceAllocation,
        violation: Violation::Submodularity,
        observations: vec![
            (vec![], f_empty),
            (vec![HUB_P1], f_b),
            (vec![HUB_P2], f_a_p),
            (vec![HUB_P1, HUB_P2], f_b_p),
        ],
        lhs: f_a_p - f_empty,
        rhs: f_b_p - f_b,
        graph: g,
        targets: t,
    })
}
