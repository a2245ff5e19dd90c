//! Definitional reference implementations of the utility metrics.

use std::collections::VecDeque;

use nalgebra::DMatrix;
use tpp_core::Graph;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut a = vec![vec![false; n]; n];
    for e in g.edges() {
        a[e.u() as usize][e.v() as usize] = true;
        a[e.v() as usize][e.u() as usize] = true;
    }
    a
}

pub fn ref_clustering(a: &[Vec<bool>]) -> f64 {
    let n = a.len();
    let mut total = 0.0;
    for v in 0..n {
        let nb: Vec<usize> = (0..n).filter(|&u| a[v][u]).collect();
        let d = nb.len();
        if d < 2 {
            continue;
        }
        let mut links = 0;
        for &x in &nb {
            for &y in &nb {
                if x < y && a[x][y] {
                    links += 1;
                }
            }
        }
        total += links as f64 / (d * (d - 1) / 2) as f64;
    }
    total / n as f64
}

/// Pearson correlation over both orientations of every edge.
pub fn ref_assortativity(a: &[Vec<bool>]) -> Option<f64> {
    let n = a.len();
    let deg: Vec<f64> = a
        .iter()
        .map(|r| r.iter().filter(|&&x| x).count() as f64)
        .collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if a[i][j] {
                xs.push(deg[i]);
                ys.push(deg[j]);
            }
        }
    }
    if xs.is_empty() {
        return None;
    }
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if vx == 0.0 || vy == 0.0 {
        return None;
    }
    Some(cov / (vx * vy).sqrt())
}

/// Core number by definition: the largest k such that the node survives
/// repeated removal of nodes with degree below k.
pub fn ref_cores(a: &[Vec<bool>]) -> Vec<usize> {
    let n = a.len();
    let mut core = vec![0; n];
    for k in 1..n {
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for v in 0..n {
                if alive[v] && (0..n).filter(|&u| alive[u] && a[v][u]).count() < k {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for v in 0..n {
            if alive[v] {
                core[v] = k;
            }
        }
    }
    core
}

pub fn ref_modularity(a: &[Vec<bool>], part: &[usize]) -> f64 {
    let n = a.len();
    let k: Vec<f64> = a
        .iter()
        .map(|r| r.iter().filter(|&&x| x).count() as f64)
        .collect();
    let two_m: f64 = k.iter().sum();
    if two_m == 0.0 {
        return 0.0;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if part[i] == part[j] {
                q += (a[i][j] as u8 as f64) - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

pub fn ref_path_length(a: &[Vec<bool>]) -> f64 {
    let n = a.len();
    let (mut sum, mut pairs) = (0usize, 0usize);
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for y in 0..n {
                if a[x][y] && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        for (t, &d) in dist.iter().enumerate() {
            if t != s && d != usize::MAX {
                sum += d;
                pairs += 1;
            }
        }
    }
    if pairs == 0 {
        0.0
    } else {
        sum as f64 / pairs as f64
    }
}

pub fn laplacian_spectrum(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut l = DMatrix::<f64>::zeros(n, n);
    for e in g.edges() {
        let (u, v) = (e.u() as usize, e.v() as usize);
        l[(u, v)] -= 1.0;
        l[(v, u)] -= 1.0;
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
    }
    let mut ev: Vec<f64> = l.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Every graph on `n` labelled nodes, by edge bitmask.
pub fn all_graphs(n: u64) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(u64, u64)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p);
        Graph::from_labeled_edges(0..n, edges).unwrap().0
    })
}
