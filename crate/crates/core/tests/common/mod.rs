#![allow(dead_code)]

pub mod reference;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tpp_core::{load_edge_list_path, Edge, Graph, MotifKind, SubgraphIndex, TargetSet};

pub fn graph(edges: &[(u64, u64)]) -> Graph {
    let labels = edges.iter().flat_map(|&(a, b)| [a, b]);
    Graph::from_labeled_edges(labels, edges.iter().copied())
        .unwrap()
        .0
}

/// Worked example with five targets and four named protectors. Labels:
/// A=1 B=2 C=3 D=4 E=5 F=6 G=7 W=8 H=9.
pub struct Fixture {
    pub original: Graph,
    pub released: Graph,
    pub targets: TargetSet,
}

pub const T1: (u64, u64) = (1, 2);
pub const T2: (u64, u64) = (1, 3);
pub const T3: (u64, u64) = (4, 8);
pub const T4: (u64, u64) = (3, 5);
pub const T5: (u64, u64) = (6, 7);
pub const P1: (u64, u64) = (1, 8);
pub const P2: (u64, u64) = (3, 8);
pub const P3: (u64, u64) = (5, 6);
pub const P4: (u64, u64) = (1, 9);

pub fn fixture() -> Fixture {
    let targets = [T1, T2, T3, T4, T5];
    let mut edges = vec![
        (1, 8),
        (2, 8),
        (3, 8),
        (1, 9),
        (3, 9),
        (3, 4),
        (5, 8),
        (3, 6),
        (5, 6),
        (5, 7),
    ];
    edges.extend(targets);
    let original = graph(&edges);
    let t = TargetSet::from_labels(&original, targets).unwrap();
    let released = original.remove_targets(&t).unwrap();
    Fixture {
        original,
        released,
        targets: t,
    }
}

/// Edge-subset brute force: every set of `support_size` edges that together
/// with `t` realizes the motif shape, recognized by node and degree counts.
pub fn brute_subgraphs(g: &Graph, t: Edge, kind: MotifKind) -> BTreeSet<Vec<Edge>> {
    let edges: Vec<Edge> = g.edges().collect();
    let size = kind.support_size();
    let mut out = BTreeSet::new();
    let mut pick = Vec::with_capacity(size);
    subsets(&edges, size, 0, &mut pick, &mut |set| {
        if realizes(set, t, kind) {
            let mut v = set.to_vec();
            v.sort();
            out.insert(v);
        }
    });
    out
}

fn subsets(
    edges: &[Edge],
    size: usize,
    start: usize,
    pick: &mut Vec<Edge>,
    f: &mut impl FnMut(&[Edge]),
) {
    if pick.len() == size {
        f(pick);
        return;
    }
    for i in start..edges.len() {
        pick.push(edges[i]);
        subsets(edges, size, i + 1, pick, f);
        pick.pop();
    }
}

fn realizes(support: &[Edge], t: Edge, kind: MotifKind) -> bool {
    let mut deg: HashMap<u32, usize> = HashMap::new();
    for e in support.iter().chain([&t]) {
        *deg.entry(e.u()).or_default() += 1;
        *deg.entry(e.v()).or_default() += 1;
    }
    let (du, dv) = (deg[&t.u()], deg[&t.v()]);
    match kind {
        MotifKind::Triangle => deg.len() == 3,
        MotifKind::Rectangle => deg.len() == 4 && deg.values().all(|&d| d == 2),
        MotifKind::RecTri => {
            let mut ends = [du, dv];
            ends.sort();
            deg.len() == 4 && ends == [2, 3]
        }
    }
}

/// Total similarity of `targets` in `g` by brute force.
pub fn brute_similarity(g: &Graph, targets: &TargetSet, kind: MotifKind) -> usize {
    targets
        .iter()
        .map(|&t| brute_subgraphs(g, t, kind).len())
        .sum()
}

/// Random graph on `n` nodes with edge probability `p`, labelled `1..=n`.
pub fn random_graph(rng: &mut impl Rng, n: u64, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let labels = 1..=n;
    Graph::from_labeled_edges(labels, edges).unwrap().0
}

/// A random instance: target-free graph plus targets.
pub struct Instance {
    pub original: Graph,
    pub released: Graph,
    pub targets: TargetSet,
}

pub fn random_instance(rng: &mut impl Rng, n: u64, p: f64, max_targets: usize) -> Option<Instance> {
    let original = random_graph(rng, n, p);
    if original.edge_count() < 2 {
        return None;
    }
    let count = rng.gen_range(1..=max_targets.min(original.edge_count() - 1));
    let targets = tpp_core::sample_targets(&original, count, rng.gen()).ok()?;
    let released = original.remove_targets(&targets).ok()?;
    Some(Instance {
        original,
        released,
        targets,
    })
}

/// Draws random instances until one has between 1 and `max_candidates`
/// candidate edges for `kind`.
pub fn instance_with_candidates(
    rng: &mut ChaCha8Rng,
    kind: MotifKind,
    max_candidates: usize,
    max_targets: usize,
) -> (Instance, SubgraphIndex) {
    loop {
        let n = rng.gen_range(5..=9);
        let p = rng.gen_range(0.3..0.7);
        let Some(inst) = random_instance(rng, n, p, max_targets) else {
            continue;
        };
        let index = SubgraphIndex::build(&inst.released, &inst.targets, kind).unwrap();
        let c = index.candidate_edges().len();
        if c >= 1 && c <= max_candidates {
            return (inst, index);
        }
    }
}

/// Powerlaw-cluster random graph (preferential attachment with triad
/// closure), labelled `1..=n`.
pub fn powerlaw_cluster(n: usize, m: usize, triad: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<HashSet<usize>> = vec![HashSet::new(); n];
    let mut ends: Vec<usize> = Vec::new();
    let add = |adj: &mut Vec<HashSet<usize>>, ends: &mut Vec<usize>, a: usize, b: usize| {
        if a != b && adj[a].insert(b) {
            adj[b].insert(a);
            ends.push(a);
            ends.push(b);
            true
        } else {
            false
        }
    };
    for a in 0..=m {
        for b in a + 1..=m {
            add(&mut adj, &mut ends, a, b);
        }
    }
    for v in m + 1..n {
        let mut added = 0;
        let mut last: Option<usize> = None;
        let mut guard = 0;
        while added < m && guard < 100 * m {
            guard += 1;
            let closed = match last {
                Some(w) if rng.gen_bool(triad) => {
                    let mut nb: Vec<usize> = adj[w].iter().copied().filter(|&x| x != v).collect();
                    nb.sort_unstable();
                    (!nb.is_empty()).then(|| nb[rng.gen_range(0..nb.len())])
                }
                _ => None,
            };
            let target = closed.unwrap_or_else(|| ends[rng.gen_range(0..ends.len())]);
            if add(&mut adj, &mut ends, v, target) {
                added += 1;
                last = Some(target);
            }
        }
    }
    let mut edges = Vec::new();
    for (a, nb) in adj.iter().enumerate() {
        for &b in nb {
            if a < b {
                edges.push((a as u64 + 1, b as u64 + 1));
            }
        }
    }
    edges.sort_unstable();
    Graph::from_labeled_edges(1..=n as u64, edges).unwrap().0
}

/// Stand-in for the e-mail network when the real file is absent: same node
/// count and about the same edge count.
pub fn email_surrogate() -> Graph {
    powerlaw_cluster(1133, 5, 0.4, 2024)
}

fn data_path(var: &str, file: &str) -> Option<PathBuf> {
    if let Ok(p) = std::env::var(var) {
        let p = PathBuf::from(p);
        return p.exists().then_some(p);
    }
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(file);
    p.exists().then_some(p)
}

/// The e-mail network, from `TPP_ARENAS_EMAIL` or `data/arenas-email.txt`.
pub fn arenas_email() -> Option<Graph> {
    data_path("TPP_ARENAS_EMAIL", "arenas-email.txt").map(|p| load_edge_list_path(p).unwrap().0)
}

/// The co-authorship network, from `TPP_DBLP` or `data/dblp.txt`.
pub fn dblp() -> Option<Graph> {
    data_path("TPP_DBLP", "dblp.txt").map(|p| load_edge_list_path(p).unwrap().0)
}

/// `g` with every edge of `removed` deleted.
pub fn without(g: &Graph, removed: &[Edge]) -> Graph {
    let mut h = g.clone();
    for &e in removed {
        h.delete_edge(e).unwrap();
    }
    h
}

/// Total similarity after deleting `removed`, by a fresh index build.
pub fn similarity_after(inst: &Instance, kind: MotifKind, removed: &[Edge]) -> usize {
    SubgraphIndex::build(&without(&inst.released, removed), &inst.targets, kind)
        .unwrap()
        .total_live()
}
