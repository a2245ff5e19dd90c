use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Run, SelectOptions, SelectionResult};
use crate::error::{Error, Result};
use crate::graph::{Graph, TargetSet};
use crate::motif::MotifKind;

/// Random deletion: `k` non-target edges drawn uniformly without replacement.
pub fn rd_baseline(
    g: &Graph,
    targets: &TargetSet,
    kind: MotifKind,
    k: usize,
    seed: u64,
) -> Result<SelectionResult> {
    let edges: Vec<_> = g.edges().collect();
    if k > edges.len() {
        return Err(Error::NotEnoughEdges {
            requested: k,
            available: edges.len(),
        });
    }
    let mut run = Run::new(g, targets, kind, SelectOptions::full())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in index::sample(&mut rng, edges.len(), k) {
        run.commit(edges[i], None)?;
    }
    Ok(run.finish())
}

/// Random deletion from target subgraphs: each step draws uniformly from the
/// support edges of live subgraphs, stopping early once none remain.
pub fn rdt_baseline(
    g: &Graph,
    targets: &TargetSet,
    kind: MotifKind,
    k: usize,
    seed: u64,
) -> Result<SelectionResult> {
    let mut run = Run::new(g, targets, kind, SelectOptions::restricted())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..k {
        let pool: Vec<_> = run.state().index().candidate_edges().into_iter().collect();
        if pool.is_empty() {
            break;
        }
        let p = pool[rng.gen_range(0..pool.len())];
        run.commit(p, None)?;
    }
    Ok(run.finish())
}
