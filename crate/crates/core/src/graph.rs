//! Undirected simple graphs, edge-list ingestion and target sets.
//!
//! Node labels from the input file are arbitrary non-negative integers. They
//! are remapped to a dense `0..N` range in ascending label order, so dense-id
//! order and label order agree and canonical edge order is the same in both.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type NodeId = u32;

/// An undirected edge with endpoints stored in canonical `u < v` order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: NodeId,
    v: NodeId,
}

impl Edge {
    /// Builds the canonical edge between `a` and `b`.
    ///
    /// Callers must not pass a self-loop; graph-level constructors reject
    /// those before reaching here.
    pub fn new(a: NodeId, b: NodeId) -> Edge {
        debug_assert_ne!(a, b, "self-loop edge");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(&self) -> NodeId {
        self.u
    }

    pub fn v(&self) -> NodeId {
        self.v
    }

    pub fn endpoints(&self) -> (NodeId, NodeId) {
        (self.u, self.v)
    }

    pub fn touches(&self, n: NodeId) -> bool {
        self.u == n || self.v == n
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Input format accepted by [`load_edge_list`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FormatHint {
    /// Whitespace, tab or comma separated columns.
    #[default]
    Auto,
    /// Whitespace separated columns only.
    Whitespace,
}

/// Line accounting from an edge-list load.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub lines: usize,
    pub comments: usize,
    pub self_loops: usize,
    pub duplicates: usize,
}

impl LoadStats {
    pub fn dropped(&self) -> usize {
        self.self_loops + self.duplicates
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<u64>,
    ids: HashMap<u64, NodeId>,
    adj: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph over `labels` (deduplicated and sorted) with the given
    /// labelled edges. Self-loops and repeated edges are skipped and counted.
    pub fn from_labeled_edges(
        labels: impl IntoIterator<Item = u64>,
        edges: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<(Graph, LoadStats)> {
        let mut labels: Vec<u64> = labels.into_iter().collect();
        labels.sort_unstable();
        labels.dedup();
        let ids: HashMap<u64, NodeId> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as NodeId))
            .collect();
        let mut g = Graph {
            adj: vec![Vec::new(); labels.len()],
            labels,
            ids,
            edge_count: 0,
        };
        let mut stats = LoadStats::default();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let ia = *g.ids.get(&a).ok_or(Error::UnknownNode(a))?;
            let ib = *g.ids.get(&b).ok_or(Error::UnknownNode(b))?;
            if ia == ib {
                stats.self_loops += 1;
                continue;
            }
            pairs.push(Edge::new(ia, ib));
        }
        let before = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        stats.duplicates = before - pairs.len();
        for e in &pairs {
            g.adj[e.u as usize].push(e.v);
            g.adj[e.v as usize].push(e.u);
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        g.edge_count = pairs.len();
        Ok((g, stats))
    }

    /// Graph on the same node universe as `self`, with the given edges.
    pub fn with_edges(&self, edges: impl IntoIterator<Item = Edge>) -> Graph {
        let mut adj = vec![Vec::new(); self.labels.len()];
        let mut count = 0;
        let mut seen = HashSet::new();
        for e in edges {
            if seen.insert(e) {
                adj[e.u as usize].push(e.v);
                adj[e.v as usize].push(e.u);
                count += 1;
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            labels: self.labels.clone(),
            ids: self.ids.clone(),
            adj,
            edge_count: count,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, n: NodeId) -> usize {
        self.adj[n as usize].len()
    }

    /// Sorted neighbor list of `n`.
    pub fn neighbors(&self, n: NodeId) -> &[NodeId] {
        &self.adj[n as usize]
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        if a == b || a as usize >= self.adj.len() || b as usize >= self.adj.len() {
            return false;
        }
        let (small, other) = if self.adj[a as usize].len() <= self.adj[b as usize].len() {
            (a, b)
        } else {
            (b, a)
        };
        self.adj[small as usize].binary_search(&other).is_ok()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    /// Common neighbors of `a` and `b` in ascending order.
    pub fn common_neighbors(&self, a: NodeId, b: NodeId) -> Vec<NodeId> {
        let (x, y) = (&self.adj[a as usize], &self.adj[b as usize]);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(x[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// All edges in canonical ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as NodeId;
            let start = list.partition_point(|&v| v < u);
            list[start..].iter().map(move |&v| Edge { u, v })
        })
    }

    pub fn label(&self, n: NodeId) -> u64 {
        self.labels[n as usize]
    }

    pub fn node(&self, label: u64) -> Option<NodeId> {
        self.ids.get(&label).copied()
    }

    pub fn edge_labels(&self, e: Edge) -> (u64, u64) {
        (self.label(e.u), self.label(e.v))
    }

    /// Resolves a labelled pair into a canonical edge. The edge need not exist.
    pub fn pair(&self, a: u64, b: u64) -> Result<Edge> {
        let ia = self.node(a).ok_or(Error::UnknownNode(a))?;
        let ib = self.node(b).ok_or(Error::UnknownNode(b))?;
        if ia == ib {
            return Err(Error::SelfLoop(a));
        }
        Ok(Edge::new(ia, ib))
    }

    pub fn delete_edge(&mut self, e: Edge) -> Result<()> {
        let (u, v) = (e.u as usize, e.v as usize);
        let (Ok(iu), Ok(iv)) = (
            self.adj.get(u).map_or(Err(0), |l| l.binary_search(&e.v)),
            self.adj.get(v).map_or(Err(0), |l| l.binary_search(&e.u)),
        ) else {
            let (a, b) = self.edge_labels_lossy(e);
            return Err(Error::MissingEdge(a, b));
        };
        self.adj[u].remove(iu);
        self.adj[v].remove(iv);
        self.edge_count -= 1;
        Ok(())
    }

    pub fn add_edge(&mut self, e: Edge) -> Result<()> {
        let (u, v) = (e.u as usize, e.v as usize);
        if u >= self.adj.len() || v >= self.adj.len() {
            let (a, b) = self.edge_labels_lossy(e);
            return Err(Error::UnknownNode(if u >= self.adj.len() { a } else { b }));
        }
        match self.adj[u].binary_search(&e.v) {
            Ok(_) => {
                let (a, b) = self.edge_labels(e);
                Err(Error::DuplicateEdge(a, b))
            }
            Err(pos) => {
                self.adj[u].insert(pos, e.v);
                let pos = self.adj[v].partition_point(|&x| x < e.u);
                self.adj[v].insert(pos, e.u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    /// Copy of the graph with every target edge removed.
    pub fn remove_targets(&self, targets: &TargetSet) -> Result<Graph> {
        let mut g = self.clone();
        for &t in targets.iter() {
            g.delete_edge(t)?;
        }
        Ok(g)
    }

    /// Writes one `u v` line per edge in canonical ascending order.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for e in self.edges() {
            let (a, b) = self.edge_labels(e);
            writeln!(out, "{a} {b}")?;
        }
        Ok(())
    }

    fn edge_labels_lossy(&self, e: Edge) -> (u64, u64) {
        let get = |n: NodeId| self.labels.get(n as usize).copied().unwrap_or(n as u64);
        (get(e.u), get(e.v))
    }
}

fn parse_pairs<R: BufRead>(reader: R, hint: FormatHint) -> Result<(Vec<(u64, u64)>, LoadStats)> {
    let mut stats = LoadStats::default();
    let mut pairs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        stats.lines += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('%') || trimmed.starts_with('#') {
            stats.comments += 1;
            continue;
        }
        let mut tokens: Box<dyn Iterator<Item = &str>> = match hint {
            FormatHint::Auto => Box::new(
                trimmed
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty()),
            ),
            FormatHint::Whitespace => Box::new(trimmed.split_whitespace()),
        };
        let mut next_id = || -> Result<u64> {
            let tok = tokens.next().ok_or(Error::ShortLine { line: lineno })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                token: tok.to_string(),
            })
        };
        let a = next_id()?;
        let b = next_id()?;
        pairs.push((a, b));
    }
    Ok((pairs, stats))
}

/// Reads an edge list. Lines starting with `%` or `#` are comments; any
/// column after the second is ignored.
pub fn load_edge_list<R: BufRead>(reader: R, hint: FormatHint) -> Result<(Graph, LoadStats)> {
    let (pairs, mut stats) = parse_pairs(reader, hint)?;
    let labels: Vec<u64> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let (g, s) = Graph::from_labeled_edges(labels, pairs)?;
    stats.self_loops = s.self_loops;
    stats.duplicates = s.duplicates;
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if stats.dropped() > 0 {
        log::info!(
            "dropped {} self-loops and {} duplicate edges",
            stats.self_loops,
            stats.duplicates
        );
    }
    Ok((g, stats))
}

pub fn load_edge_list_path(path: impl AsRef<Path>) -> Result<(Graph, LoadStats)> {
    let f = File::open(path)?;
    load_edge_list(BufReader::new(f), FormatHint::Auto)
}

/// Reads an edge list whose labels must all belong to `universe`. The result
/// keeps every node of `universe`, including ones left isolated.
pub fn load_edge_list_in<R: BufRead>(universe: &Graph, reader: R) -> Result<(Graph, LoadStats)> {
    let (pairs, mut stats) = parse_pairs(reader, FormatHint::Auto)?;
    let (g, s) = Graph::from_labeled_edges(universe.labels.iter().copied(), pairs)?;
    stats.self_loops = s.self_loops;
    stats.duplicates = s.duplicates;
    Ok((g, stats))
}

/// Ordered set of target edges, each present in the original graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TargetSet {
    targets: Vec<Edge>,
    positions: HashMap<Edge, usize>,
}

impl TargetSet {
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = Edge>) -> Result<TargetSet> {
        let mut set = TargetSet::default();
        for e in edges {
            let (a, b) = g.edge_labels(e);
            if !g.contains(e) {
                return Err(Error::MissingEdge(a, b));
            }
            if set.positions.insert(e, set.targets.len()).is_some() {
                return Err(Error::DuplicateTarget(a, b));
            }
            set.targets.push(e);
        }
        Ok(set)
    }

    pub fn from_labels(
        g: &Graph,
        pairs: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<TargetSet> {
        let edges = pairs
            .into_iter()
            .map(|(a, b)| g.pair(a, b))
            .collect::<Result<Vec<_>>>()?;
        TargetSet::new(g, edges)
    }

    /// Reads targets in edge-list format, in file order.
    pub fn read<R: BufRead>(g: &Graph, reader: R) -> Result<TargetSet> {
        let (pairs, _) = parse_pairs(reader, FormatHint::Auto)?;
        TargetSet::from_labels(g, pairs)
    }

    pub fn write<W: Write>(&self, g: &Graph, mut out: W) -> Result<()> {
        for &t in &self.targets {
            let (a, b) = g.edge_labels(t);
            writeln!(out, "{a} {b}")?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Edge> {
        self.targets.iter()
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.targets
    }

    pub fn get(&self, i: usize) -> Option<Edge> {
        self.targets.get(i).copied()
    }

    pub fn position(&self, e: Edge) -> Option<usize> {
        self.positions.get(&e).copied()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.positions.contains_key(&e)
    }
}

/// Samples `n` distinct edges uniformly without replacement.
pub fn sample_targets(g: &Graph, n: usize, seed: u64) -> Result<TargetSet> {
    let m = g.edge_count();
    if n > m {
        return Err(Error::NotEnoughEdges {
            requested: n,
            available: m,
        });
    }
    let edges: Vec<Edge> = g.edges().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = index::sample(&mut rng, m, n);
    TargetSet::new(g, picked.into_iter().map(|i| edges[i]))
}
