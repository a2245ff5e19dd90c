//! Graph-utility metrics and the loss ratios between an original and a
//! released graph.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::io::Write;
use std::thread;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    PathLength,
    Clustering,
    Assortativity,
    CoreNumber,
    Laplacian,
    Modularity,
}

impl Metric {
    pub const ALL: [Metric; 6] = [
        Metric::PathLength,
        Metric::Clustering,
        Metric::Assortativity,
        Metric::CoreNumber,
        Metric::Laplacian,
        Metric::Modularity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::PathLength => "avg_path_length",
            Metric::Clustering => "avg_clustering",
            Metric::Assortativity => "assortativity",
            Metric::CoreNumber => "avg_core_number",
            Metric::Laplacian => "laplacian_eigenvalue",
            Metric::Modularity => "modularity",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which Laplacian eigenvalue is reported.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EigenTarget {
    #[default]
    SecondLargest,
    /// Algebraic connectivity.
    SecondSmallest,
}

#[derive(Clone, Debug)]
pub struct UtilityOptions {
    /// All-pairs BFS up to this many nodes, sampled sources above it.
    pub exact_path_limit: usize,
    pub path_sources: usize,
    pub seed: u64,
    pub eigen: EigenTarget,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub skip_path_length: bool,
    pub skip_eigenvalue: bool,
    /// Worker threads for BFS; 0 means one per available core.
    pub threads: usize,
}

impl Default for UtilityOptions {
    fn default() -> Self {
        UtilityOptions {
            exact_path_limit: 20_000,
            path_sources: 1000,
            seed: 0,
            eigen: EigenTarget::SecondLargest,
            tolerance: 1e-8,
            max_iterations: 10_000,
            skip_path_length: false,
            skip_eigenvalue: false,
            threads: 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UtilityFlags {
    pub path_sampled: bool,
    pub disconnected: bool,
    pub eigen_not_converged: bool,
    /// All edges join nodes of equal degree, so the coefficient is 0 by convention.
    pub assortativity_undefined: bool,
    pub no_edges: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UtilityReport {
    /// `None` when skipped by options.
    pub avg_path_length: Option<f64>,
    pub avg_clustering: f64,
    pub assortativity: f64,
    pub avg_core_number: f64,
    /// `None` when skipped by options.
    pub laplacian_eigenvalue: Option<f64>,
    pub modularity: f64,
    pub flags: UtilityFlags,
}

impl UtilityReport {
    pub fn get(&self, m: Metric) -> Option<f64> {
        match m {
            Metric::PathLength => self.avg_path_length,
            Metric::Clustering => Some(self.avg_clustering),
            Metric::Assortativity => Some(self.assortativity),
            Metric::CoreNumber => Some(self.avg_core_number),
            Metric::Laplacian => self.laplacian_eigenvalue,
            Metric::Modularity => Some(self.modularity),
        }
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "metric,value")?;
        for m in Metric::ALL {
            writeln!(out, "{},{}", m, fmt_opt(self.get(m)))?;
        }
        Ok(())
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x}")).unwrap_or_default()
}

pub fn compute_utility(g: &Graph, options: &UtilityOptions) -> Result<UtilityReport> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut flags = UtilityFlags {
        no_edges: g.edge_count() == 0,
        ..UtilityFlags::default()
    };
    let avg_path_length = if options.skip_path_length {
        None
    } else {
        let p = average_path_length(g, options);
        flags.path_sampled = p.sampled;
        flags.disconnected = p.disconnected;
        Some(p.value)
    };
    let (assortativity, defined) = degree_assortativity(g);
    flags.assortativity_undefined = !defined;
    let laplacian_eigenvalue = if options.skip_eigenvalue {
        None
    } else {
        let e = laplacian_eigenvalue(g, options);
        flags.eigen_not_converged = !e.converged;
        Some(e.value)
    };
    let partition = louvain(g, options.seed);
    let cores = core_numbers(g);
    Ok(UtilityReport {
        avg_path_length,
        avg_clustering: average_clustering(g),
        assortativity,
        avg_core_number: cores.iter().map(|&c| c as f64).sum::<f64>() / g.node_count() as f64,
        laplacian_eigenvalue,
        modularity: modularity(g, &partition),
        flags,
    })
}

/// Local clustering coefficient of `n`; nodes of degree below two score 0.
pub fn local_clustering(g: &Graph, n: NodeId) -> f64 {
    let nb = g.neighbors(n);
    let d = nb.len();
    if d < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if g.has_edge(a, b) {
                links += 1;
            }
        }
    }
    2.0 * links as f64 / (d * (d - 1)) as f64
}

pub fn average_clustering(g: &Graph) -> f64 {
    let n = g.node_count();
    (0..n as NodeId)
        .map(|v| local_clustering(g, v))
        .sum::<f64>()
        / n as f64
}

/// Pearson correlation of the degrees at either end of an edge. The second
/// value is false when the variance vanishes and 0 is returned instead.
pub fn degree_assortativity(g: &Graph) -> (f64, bool) {
    let m = g.edge_count() as f64;
    if m == 0.0 {
        return (0.0, false);
    }
    let (mut prod, mut mean, mut sq) = (0.0, 0.0, 0.0);
    for e in g.edges() {
        let j = g.degree(e.u()) as f64;
        let k = g.degree(e.v()) as f64;
        prod += j * k;
        mean += 0.5 * (j + k);
        sq += 0.5 * (j * j + k * k);
    }
    let (prod, mean, sq) = (prod / m, mean / m, sq / m);
    let den = sq - mean * mean;
    if den.abs() < 1e-12 {
        return (0.0, false);
    }
    ((prod - mean * mean) / den, true)
}

/// k-core index of every node.
pub fn core_numbers(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut deg: Vec<usize> = (0..n as NodeId).map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let c = *b;
        *b = start;
        start += c;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0 as NodeId; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v as NodeId;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;
    for i in 0..n {
        let v = vert[i] as usize;
        for &u in g.neighbors(v as NodeId) {
            let u = u as usize;
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw] as usize;
                if u != w {
                    pos[u] = pw;
                    vert[pu] = w as NodeId;
                    pos[w] = pu;
                    vert[pw] = u as NodeId;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    deg
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathLength {
    pub value: f64,
    pub sampled: bool,
    pub disconnected: bool,
}

/// Shortest-path distance sum and number of reachable nodes from `s`.
fn bfs_sum(g: &Graph, s: NodeId, dist: &mut [u32], queue: &mut VecDeque<NodeId>) -> (u64, u64) {
    dist.fill(u32::MAX);
    dist[s as usize] = 0;
    queue.clear();
    queue.push_back(s);
    let (mut sum, mut reached) = (0u64, 0u64);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x as usize];
        for &y in g.neighbors(x) {
            if dist[y as usize] == u32::MAX {
                dist[y as usize] = dx + 1;
                sum += (dx + 1) as u64;
                reached += 1;
                queue.push_back(y);
            }
        }
    }
    (sum, reached)
}

/// Mean shortest-path length over reachable ordered pairs.
pub fn average_path_length(g: &Graph, options: &UtilityOptions) -> PathLength {
    let n = g.node_count();
    let sampled = n > options.exact_path_limit;
    let sources: Vec<NodeId> = if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        rand::seq::index::sample(&mut rng, n, options.path_sources.min(n))
            .into_iter()
            .map(|i| i as NodeId)
            .collect()
    } else {
        (0..n as NodeId).collect()
    };
    let workers = if options.threads == 0 {
        thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1)
    } else {
        options.threads
    }
    .clamp(1, sources.len().max(1));
    let chunk = sources.len().div_ceil(workers).max(1);
    let (sum, pairs) = thread::scope(|scope| {
        let handles: Vec<_> = sources
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let mut dist = vec![u32::MAX; n];
                    let mut queue = VecDeque::new();
                    part.iter().fold((0u64, 0u64), |(s, p), &src| {
                        let (a, b) = bfs_sum(g, src, &mut dist, &mut queue);
                        (s + a, p + b)
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("bfs worker"))
            .fold((0u64, 0u64), |(s, p), (a, b)| (s + a, p + b))
    });
    let expected = sources.len() as u64 * (n as u64 - 1);
    PathLength {
        value: if pairs == 0 {
            0.0
        } else {
            sum as f64 / pairs as f64
        },
        sampled,
        disconnected: pairs < expected,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eigenvalue {
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
}

fn laplacian_apply(g: &Graph, x: &[f64], y: &mut [f64]) {
    for (v, out) in y.iter_mut().enumerate() {
        let nb = g.neighbors(v as NodeId);
        let mut acc = nb.len() as f64 * x[v];
        for &u in nb {
            acc -= x[u as usize];
        }
        *out = acc;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    y.iter_mut().zip(x).for_each(|(v, w)| *v += a * w);
}

/// Modified Gram-Schmidt against `fixed` and then within `block`. Vectors
/// that collapse are replaced by fresh random ones.
fn orthonormalize(block: &mut [Vec<f64>], fixed: &[Vec<f64>], rng: &mut ChaCha8Rng) {
    for i in 0..block.len() {
        for attempt in 0..4 {
            let (done, rest) = block.split_at_mut(i);
            let x = &mut rest[0];
            for _ in 0..2 {
                for b in fixed.iter().chain(done.iter()) {
                    let c = dot(x, b);
                    axpy(x, -c, b);
                }
            }
            let norm = dot(x, x).sqrt();
            if norm > 1e-10 || attempt == 3 {
                if norm > 0.0 {
                    x.iter_mut().for_each(|v| *v /= norm);
                }
                break;
            }
            x.iter_mut().for_each(|v| *v = rng.gen_range(-1.0..1.0));
        }
    }
}

/// Mutable access to two distinct rows.
fn pair_mut(a: &mut [Vec<f64>], p: usize, q: usize) -> (&mut Vec<f64>, &mut Vec<f64>) {
    if p < q {
        let (lo, hi) = a.split_at_mut(q);
        (&mut lo[p], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(p);
        (&mut hi[0], &mut lo[q])
    }
}

/// Eigen-decomposition of a small symmetric matrix by cyclic Jacobi
/// rotations. Returns eigenvalues in descending order with their vectors as
/// columns of the second value.
fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect())
        .collect();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (rp, rq) = pair_mut(&mut a, p, q);
                for (x, y) in rp.iter_mut().zip(rq.iter_mut()) {
                    let (apk, aqk) = (*x, *y);
                    *x = c * apk - s * aqk;
                    *y = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order
        .iter()
        .map(|&i| v.iter().map(|row| row[i]).collect())
        .collect();
    (values, vectors)
}

/// Power iteration on a small block with Rayleigh-Ritz extraction, for the
/// operator `L` or `shift * I - L` restricted to the complement of `fixed`.
/// Returns the `want`-th largest eigenvalue (0-based). Iterating a block
/// rather than one vector at a time keeps the deflation accurate when the
/// leading eigenvalues are close together.
fn block_power(
    g: &Graph,
    shift: Option<f64>,
    fixed: &[Vec<f64>],
    want: usize,
    rng: &mut ChaCha8Rng,
    tol: f64,
    max_iter: usize,
) -> Eigenvalue {
    let n = g.node_count();
    let dim = n - fixed.len();
    let size = (want + 2).min(dim);
    if want >= size {
        return Eigenvalue {
            value: 0.0,
            converged: true,
            iterations: 0,
        };
    }
    let apply = |x: &[f64], y: &mut Vec<f64>| {
        laplacian_apply(g, x, y);
        if let Some(c) = shift {
            y.iter_mut().zip(x).for_each(|(v, w)| *v = c * w - *v);
        }
    };
    let mut z: Vec<Vec<f64>> = (0..size)
        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let mut w: Vec<Vec<f64>> = vec![vec![0.0; n]; size];
    let mut value = 0.0;
    for it in 1..=max_iter {
        orthonormalize(&mut z, fixed, rng);
        for (zi, wi) in z.iter().zip(w.iter_mut()) {
            apply(zi, wi);
        }
        let h: Vec<Vec<f64>> = (0..size)
            .map(|i| (0..size).map(|j| dot(&z[i], &w[j])).collect())
            .collect();
        let (theta, vecs) = jacobi_eigen(h);
        let combine = |basis: &[Vec<f64>], coef: &[f64]| {
            let mut out = vec![0.0; n];
            for (b, &c) in basis.iter().zip(coef) {
                axpy(&mut out, c, b);
            }
            out
        };
        let ritz: Vec<Vec<f64>> = vecs.iter().map(|c| combine(&z, c)).collect();
        let images: Vec<Vec<f64>> = vecs.iter().map(|c| combine(&w, c)).collect();
        value = theta[want];
        let residual = images[want]
            .iter()
            .zip(&ritz[want])
            .map(|(a, b)| (a - value * b).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= tol * value.abs().max(1.0) {
            return Eigenvalue {
                value,
                converged: true,
                iterations: it,
            };
        }
        z = images;
    }
    Eigenvalue {
        value,
        converged: false,
        iterations: max_iter,
    }
}

/// Second largest (or second smallest) eigenvalue of `L = D - A`. The
/// largest eigenpair is deflated by iterating it jointly with the wanted one.
pub fn laplacian_eigenvalue(g: &Graph, options: &UtilityOptions) -> Eigenvalue {
    let n = g.node_count();
    if n < 2 {
        return Eigenvalue {
            value: 0.0,
            converged: true,
            iterations: 0,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let (tol, max_iter) = (options.tolerance, options.max_iterations);
    match options.eigen {
        EigenTarget::SecondLargest => block_power(g, None, &[], 1, &mut rng, tol, max_iter),
        EigenTarget::SecondSmallest => {
            // L's spectrum lies in [0, 2 * max degree]; the constant vector
            // spans the kernel and is projected out.
            let shift = 2.0 * (0..n as NodeId).map(|v| g.degree(v)).max().unwrap_or(0) as f64;
            let ones = vec![1.0 / (n as f64).sqrt(); n];
            let e = block_power(g, Some(shift), &[ones], 0, &mut rng, tol, max_iter);
            Eigenvalue {
                value: (shift - e.value).max(0.0),
                ..e
            }
        }
    }
}

/// Newman modularity of a node partition given as community labels.
pub fn modularity(g: &Graph, community: &[usize]) -> f64 {
    let m = g.edge_count() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let mut internal: HashMap<usize, f64> = HashMap::new();
    let mut degree: HashMap<usize, f64> = HashMap::new();
    for e in g.edges() {
        let (a, b) = (community[e.u() as usize], community[e.v() as usize]);
        if a == b {
            *internal.entry(a).or_default() += 1.0;
        }
    }
    for (v, &c) in community.iter().enumerate() {
        *degree.entry(c).or_default() += g.degree(v as NodeId) as f64;
    }
    degree
        .iter()
        .map(|(c, &d)| internal.get(c).copied().unwrap_or(0.0) / m - (d / (2.0 * m)).powi(2))
        .sum()
}

/// Weighted graph used between Louvain levels. `adj[i]` holds
/// `(neighbor, weight)` pairs; self-loops appear once with their full weight.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    strength: Vec<f64>,
}

/// One local-moving phase. Returns the community of every level node and
/// whether anything moved.
fn local_moves(level: &Level, two_m: f64, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
    let n = level.adj.len();
    let mut comm: Vec<usize> = (0..n).collect();
    let mut tot: Vec<f64> = level.strength.clone();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut weights: Vec<f64> = vec![0.0; n];
    let mut seen: Vec<usize> = Vec::new();
    let mut moved_any = false;
    loop {
        let mut moved = false;
        for &i in &order {
            let ki = level.strength[i];
            let own = comm[i];
            for &(j, w) in &level.adj[i] {
                if j == i {
                    continue;
                }
                let c = comm[j];
                if weights[c] == 0.0 {
                    seen.push(c);
                }
                weights[c] += w;
            }
            tot[own] -= ki;
            let gain = |c: usize, w: f64| w - tot[c] * ki / two_m;
            let mut best = own;
            let mut best_gain = gain(own, weights[own]);
            for &c in &seen {
                let g = gain(c, weights[c]);
                if g > best_gain + 1e-12 {
                    best = c;
                    best_gain = g;
                }
            }
            tot[best] += ki;
            if best != own {
                comm[i] = best;
                moved = true;
            }
            for &c in &seen {
                weights[c] = 0.0;
            }
            seen.clear();
        }
        if !moved {
            break;
        }
        moved_any = true;
    }
    (comm, moved_any)
}

/// Seeded Louvain community detection. Returns a community label per node.
pub fn louvain(g: &Graph, seed: u64) -> Vec<usize> {
    let n = g.node_count();
    let mut membership: Vec<usize> = (0..n).collect();
    if g.edge_count() == 0 {
        return membership;
    }
    let two_m = 2.0 * g.edge_count() as f64;
    let mut level = Level {
        adj: (0..n as NodeId)
            .map(|v| g.neighbors(v).iter().map(|&u| (u as usize, 1.0)).collect())
            .collect(),
        strength: (0..n as NodeId).map(|v| g.degree(v) as f64).collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let (comm, moved) = local_moves(&level, two_m, &mut rng);
        if !moved {
            break;
        }
        let mut relabel = HashMap::new();
        for &c in &comm {
            let next = relabel.len();
            relabel.entry(c).or_insert(next);
        }
        let k = relabel.len();
        for m in membership.iter_mut() {
            *m = relabel[&comm[*m]];
        }
        let mut adj: Vec<HashMap<usize, f64>> = vec![HashMap::new(); k];
        let mut strength = vec![0.0; k];
        for (i, nb) in level.adj.iter().enumerate() {
            let ci = relabel[&comm[i]];
            strength[ci] += level.strength[i];
            for &(j, w) in nb {
                let cj = relabel[&comm[j]];
                *adj[ci].entry(cj).or_default() += w;
            }
        }
        level = Level {
            adj: adj
                .into_iter()
                .map(|m| {
                    let mut v: Vec<(usize, f64)> = m.into_iter().collect();
                    v.sort_by_key(|&(c, _)| c);
                    v
                })
                .collect(),
            strength,
        };
        if k == 1 {
            break;
        }
    }
    membership
}

/// Absolute relative change `|z - z'| / |z|`; `None` when `z` is 0.
pub fn utility_loss_ratio(z_orig: f64, z_released: f64) -> Option<f64> {
    if z_orig == 0.0 {
        return None;
    }
    Some(((z_orig - z_released) / z_orig).abs())
}

#[derive(Clone, Debug, PartialEq)]
pub struct UlrReport {
    pub original: UtilityReport,
    pub released: UtilityReport,
    pub ratios: Vec<(Metric, Option<f64>)>,
    /// Mean over the defined ratios.
    pub average: Option<f64>,
}

impl UlrReport {
    pub fn ratio(&self, m: Metric) -> Option<f64> {
        self.ratios
            .iter()
            .find(|(x, _)| *x == m)
            .and_then(|(_, r)| *r)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "metric,original,released,ulr")?;
        for &(m, r) in &self.ratios {
            writeln!(
                out,
                "{},{},{},{}",
                m,
                fmt_opt(self.original.get(m)),
                fmt_opt(self.released.get(m)),
                fmt_opt(r)
            )?;
        }
        writeln!(out, "average,,,{}", fmt_opt(self.average))?;
        Ok(())
    }

    pub fn write_table<W: Write>(&self, mut out: W) -> Result<()> {
        let cell = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_else(|| "-".into());
        writeln!(
            out,
            "{:<22} {:>14} {:>14} {:>10}",
            "metric", "original", "released", "ulr"
        )?;
        for &(m, r) in &self.ratios {
            writeln!(
                out,
                "{:<22} {:>14} {:>14} {:>10}",
                m.name(),
                cell(self.original.get(m)),
                cell(self.released.get(m)),
                r.map(|x| format!("{:.4}%", 100.0 * x))
                    .unwrap_or_else(|| "-".into())
            )?;
        }
        writeln!(
            out,
            "{:<22} {:>14} {:>14} {:>10}",
            "average",
            "",
            "",
            self.average
                .map(|x| format!("{:.4}%", 100.0 * x))
                .unwrap_or_else(|| "-".into())
        )?;
        Ok(())
    }
}

pub fn utility_loss_report(
    original: &Graph,
    released: &Graph,
    options: &UtilityOptions,
) -> Result<UlrReport> {
    if original.node_count() != released.node_count() {
        return Err(Error::InvalidValue {
            what: "node universe",
            value: format!(
                "{} vs {} nodes",
                original.node_count(),
                released.node_count()
            ),
        });
    }
    let a = compute_utility(original, options)?;
    let b = compute_utility(released, options)?;
    Ok(ulr_between(a, b))
}

/// Loss ratios between two already computed reports.
pub fn ulr_between(original: UtilityReport, released: UtilityReport) -> UlrReport {
    let ratios: Vec<(Metric, Option<f64>)> = Metric::ALL
        .iter()
        .map(|&m| {
            let r = match (original.get(m), released.get(m)) {
                (Some(a), Some(b)) => utility_loss_ratio(a, b),
                _ => None,
            };
            (m, r)
        })
        .collect();
    let defined: Vec<f64> = ratios.iter().filter_map(|(_, r)| *r).collect();
    let average = (!defined.is_empty()).then(|| defined.iter().sum::<f64>() / defined.len() as f64);
    UlrReport {
        original,
        released,
        ratios,
        average,
    }
}
