//! Target-subgraph enumeration and the incrementally maintained index.
//!
//! A target subgraph is the set of existing edges that, together with a
//! missing target link, forms the chosen motif. Every subgraph belongs to
//! exactly one target, since the target link itself is part of the motif and
//! targets are absent from the released graph.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, TargetSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MotifKind {
    /// A 2-length path between the target's endpoints.
    Triangle,
    /// A 3-length path between the target's endpoints.
    Rectangle,
    /// A 2-length path plus a 3-length path through the same middle node.
    RecTri,
}

impl MotifKind {
    pub const ALL: [MotifKind; 3] = [MotifKind::Triangle, MotifKind::Rectangle, MotifKind::RecTri];

    /// Number of support edges in one instance.
    pub fn support_size(self) -> usize {
        match self {
            MotifKind::Triangle => 2,
            MotifKind::Rectangle => 3,
            MotifKind::RecTri => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MotifKind::Triangle => "triangle",
            MotifKind::Rectangle => "rectangle",
            MotifKind::RecTri => "rectri",
        }
    }
}

impl fmt::Display for MotifKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MotifKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "triangle" => Ok(MotifKind::Triangle),
            "rectangle" => Ok(MotifKind::Rectangle),
            "rectri" => Ok(MotifKind::RecTri),
            _ => Err(Error::InvalidValue {
                what: "motif",
                value: s.to_string(),
            }),
        }
    }
}

/// One motif instance for a target; `support` is sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TargetSubgraph {
    pub target: Edge,
    pub support: Vec<Edge>,
}

impl TargetSubgraph {
    fn new(target: Edge, mut support: Vec<Edge>) -> TargetSubgraph {
        support.sort_unstable();
        TargetSubgraph { target, support }
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.support.binary_search(&e).is_ok()
    }
}

/// Lists every target subgraph of `t` in the target-free graph `g`.
pub fn enumerate_target_subgraphs(
    g: &Graph,
    t: Edge,
    kind: MotifKind,
) -> Result<Vec<TargetSubgraph>> {
    if g.contains(t) {
        let (a, b) = g.edge_labels(t);
        return Err(Error::TargetPresent(a, b));
    }
    let (u, v) = t.endpoints();
    let mut out = Vec::new();
    match kind {
        MotifKind::Triangle => {
            for w in g.common_neighbors(u, v) {
                out.push(TargetSubgraph::new(
                    t,
                    vec![Edge::new(u, w), Edge::new(w, v)],
                ));
            }
        }
        MotifKind::Rectangle => {
            // u-a-b-v; starting from u yields each path once.
            for &a in g.neighbors(u) {
                if a == v {
                    continue;
                }
                for b in g.common_neighbors(a, v) {
                    if b == u {
                        continue;
                    }
                    out.push(TargetSubgraph::new(
                        t,
                        vec![Edge::new(u, a), Edge::new(a, b), Edge::new(b, v)],
                    ));
                }
            }
        }
        MotifKind::RecTri => {
            for w in g.common_neighbors(u, v) {
                let (uw, wv) = (Edge::new(u, w), Edge::new(w, v));
                // u-w-x-v
                for x in g.common_neighbors(w, v) {
                    if x != u {
                        out.push(TargetSubgraph::new(
                            t,
                            vec![uw, wv, Edge::new(w, x), Edge::new(x, v)],
                        ));
                    }
                }
                // u-x-w-v
                for x in g.common_neighbors(u, w) {
                    if x != v {
                        out.push(TargetSubgraph::new(
                            t,
                            vec![uw, wv, Edge::new(u, x), Edge::new(x, w)],
                        ));
                    }
                }
            }
            out.sort_unstable();
            out.dedup();
        }
    }
    Ok(out)
}

/// Per-target counts of subgraphs broken by one deletion, in target order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Broken {
    pub per_target: Vec<usize>,
}

impl Broken {
    pub fn total(&self) -> usize {
        self.per_target.iter().sum()
    }
}

type SubgraphId = u32;

/// All target subgraphs of a target set, with an edge-to-subgraph inverted
/// map. Deletions tombstone subgraphs rather than removing them.
#[derive(Clone, Debug)]
pub struct SubgraphIndex {
    kind: MotifKind,
    targets: Vec<Edge>,
    target_pos: HashMap<Edge, usize>,
    subgraphs: Vec<TargetSubgraph>,
    owner: Vec<usize>,
    alive: Vec<bool>,
    per_target: Vec<Vec<SubgraphId>>,
    live_per_target: Vec<usize>,
    inverted: HashMap<Edge, Vec<SubgraphId>>,
    live_per_edge: HashMap<Edge, usize>,
    live_total: usize,
}

impl SubgraphIndex {
    /// Indexes every target subgraph of every target. `g` must already have
    /// the targets removed.
    pub fn build(g: &Graph, targets: &TargetSet, kind: MotifKind) -> Result<SubgraphIndex> {
        let mut index = SubgraphIndex {
            kind,
            targets: targets.as_slice().to_vec(),
            target_pos: targets.iter().enumerate().map(|(i, &t)| (t, i)).collect(),
            subgraphs: Vec::new(),
            owner: Vec::new(),
            alive: Vec::new(),
            per_target: vec![Vec::new(); targets.len()],
            live_per_target: vec![0; targets.len()],
            inverted: HashMap::new(),
            live_per_edge: HashMap::new(),
            live_total: 0,
        };
        for (ti, &t) in targets.iter().enumerate() {
            for sg in enumerate_target_subgraphs(g, t, kind)? {
                let id = index.subgraphs.len() as SubgraphId;
                for &e in &sg.support {
                    index.inverted.entry(e).or_default().push(id);
                    *index.live_per_edge.entry(e).or_default() += 1;
                }
                index.per_target[ti].push(id);
                index.live_per_target[ti] += 1;
                index.live_total += 1;
                index.owner.push(ti);
                index.alive.push(true);
                index.subgraphs.push(sg);
            }
        }
        Ok(index)
    }

    pub fn kind(&self) -> MotifKind {
        self.kind
    }

    pub fn targets(&self) -> &[Edge] {
        &self.targets
    }

    pub fn target_count(&self) -> usize {
        self.targets.len()
    }

    pub fn target_position(&self, t: Edge) -> Option<usize> {
        self.target_pos.get(&t).copied()
    }

    pub fn is_target(&self, e: Edge) -> bool {
        self.target_pos.contains_key(&e)
    }

    /// Live subgraph count of the target at position `ti`.
    pub fn live_count(&self, ti: usize) -> usize {
        self.live_per_target[ti]
    }

    pub fn live_counts(&self) -> &[usize] {
        &self.live_per_target
    }

    pub fn total_live(&self) -> usize {
        self.live_total
    }

    /// Number of subgraphs ever indexed (live or dead).
    pub fn total_indexed(&self) -> usize {
        self.subgraphs.len()
    }

    /// Live subgraphs containing `e`.
    pub fn live_containing(&self, e: Edge) -> usize {
        self.live_per_edge.get(&e).copied().unwrap_or(0)
    }

    /// Target positions of the live subgraphs containing `e`, one entry per
    /// subgraph.
    pub fn live_owners(&self, e: Edge) -> impl Iterator<Item = usize> + '_ {
        self.inverted
            .get(&e)
            .into_iter()
            .flatten()
            .filter(|&&id| self.alive[id as usize])
            .map(|&id| self.owner[id as usize])
    }

    /// Live subgraphs of target `ti` that contain `e`.
    pub fn live_containing_for(&self, e: Edge, ti: usize) -> usize {
        self.live_owners(e).filter(|&o| o == ti).count()
    }

    pub fn live_subgraphs(&self) -> impl Iterator<Item = &TargetSubgraph> + '_ {
        self.subgraphs
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(s, _)| s)
    }

    pub fn live_subgraphs_of(&self, ti: usize) -> impl Iterator<Item = &TargetSubgraph> + '_ {
        self.per_target[ti]
            .iter()
            .filter(|&&id| self.alive[id as usize])
            .map(|&id| &self.subgraphs[id as usize])
    }

    /// Live subgraphs as a set, for comparison against a fresh rebuild.
    pub fn live_set(&self) -> BTreeSet<TargetSubgraph> {
        self.live_subgraphs().cloned().collect()
    }

    /// Kills every live subgraph whose support contains `p`.
    pub fn apply_deletion(&mut self, p: Edge) -> Result<Broken> {
        if self.is_target(p) {
            return Err(Error::ProtectorIsTarget(p.u() as u64, p.v() as u64));
        }
        let mut broken = Broken {
            per_target: vec![0; self.targets.len()],
        };
        let Some(ids) = self.inverted.get(&p) else {
            return Ok(broken);
        };
        for &id in ids {
            let id = id as usize;
            if !self.alive[id] {
                continue;
            }
            self.alive[id] = false;
            let ti = self.owner[id];
            broken.per_target[ti] += 1;
            self.live_per_target[ti] -= 1;
            self.live_total -= 1;
            for e in &self.subgraphs[id].support {
                if let Some(c) = self.live_per_edge.get_mut(e) {
                    *c -= 1;
                    if *c == 0 {
                        self.live_per_edge.remove(e);
                    }
                }
            }
        }
        Ok(broken)
    }

    /// Union of support edges over live subgraphs.
    pub fn candidate_edges(&self) -> BTreeSet<Edge> {
        self.live_per_edge.keys().copied().collect()
    }

    pub(crate) fn candidate_iter(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        self.live_per_edge.iter().map(|(&e, &c)| (e, c))
    }

    /// Writes `target_u target_v : e1_u e1_v, e2_u e2_v, ...` per live subgraph.
    pub fn dump<W: Write>(&self, g: &Graph, mut out: W) -> Result<()> {
        for sg in self.live_subgraphs() {
            let (a, b) = g.edge_labels(sg.target);
            let support: Vec<String> = sg
                .support
                .iter()
                .map(|&e| {
                    let (x, y) = g.edge_labels(e);
                    format!("{x} {y}")
                })
                .collect();
            writeln!(out, "{a} {b} : {}", support.join(", "))?;
        }
        Ok(())
    }

    /// Panics if the incremental state differs from a rebuild on `g`.
    pub fn assert_consistent(&self, g: &Graph) {
        let targets = TargetSet::new(&self.with_targets(g), self.targets.iter().copied())
            .expect("targets valid on augmented graph");
        let fresh = SubgraphIndex::build(g, &targets, self.kind).expect("rebuild");
        assert_eq!(
            self.live_set(),
            fresh.live_set(),
            "index diverged from rebuild"
        );
        assert_eq!(self.live_per_target, fresh.live_per_target);
        assert_eq!(self.live_per_edge, fresh.live_per_edge);
    }

    fn with_targets(&self, g: &Graph) -> Graph {
        g.with_edges(g.edges().chain(self.targets.iter().copied()))
    }
}
