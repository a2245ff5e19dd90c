//! Similarity and dissimilarity bookkeeping over a [`SubgraphIndex`].
//!
//! The similarity of a target is its live subgraph count; total similarity
//! sums over targets and the dissimilarity is `C` minus that total. Deleting
//! a protector raises the dissimilarity by the number of live subgraphs it
//! breaks, which is what every selector ranks by.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::motif::{Broken, SubgraphIndex};

/// Per-target gain of a protector, ranked lexicographically.
///
/// `own` counts live subgraphs of the charged target broken by the protector
/// and `cross` those of every other target. Ranking `own` first and `cross`
/// second is the same order as `own + cross / C` whenever `cross < C`, which
/// always holds since `C` is at least the initial total similarity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GainRank {
    pub own: usize,
    pub cross: usize,
}

impl GainRank {
    pub fn total(&self) -> usize {
        self.own + self.cross
    }

    pub fn is_zero(&self) -> bool {
        self.own == 0 && self.cross == 0
    }
}

/// The smallest valid constant: the initial total similarity.
pub fn choose_constant(index: &SubgraphIndex) -> usize {
    index.total_live()
}

#[derive(Clone, Debug)]
pub struct ObjectiveState {
    index: SubgraphIndex,
    constant: usize,
    initial: usize,
    deleted: Vec<Edge>,
    deleted_set: HashSet<Edge>,
    charged: Vec<Vec<Edge>>,
}

impl ObjectiveState {
    /// Fresh state with `C` equal to the initial total similarity.
    pub fn new(index: SubgraphIndex) -> ObjectiveState {
        let c = choose_constant(&index);
        Self::build(index, c)
    }

    pub fn with_constant(index: SubgraphIndex, constant: usize) -> Result<ObjectiveState> {
        let minimum = choose_constant(&index);
        if constant < minimum {
            return Err(Error::ConstantTooSmall {
                given: constant,
                minimum,
            });
        }
        Ok(Self::build(index, constant))
    }

    fn build(index: SubgraphIndex, constant: usize) -> ObjectiveState {
        let n = index.target_count();
        ObjectiveState {
            initial: index.total_live(),
            index,
            constant,
            deleted: Vec::new(),
            deleted_set: HashSet::new(),
            charged: vec![Vec::new(); n],
        }
    }

    pub fn index(&self) -> &SubgraphIndex {
        &self.index
    }

    pub fn into_index(self) -> SubgraphIndex {
        self.index
    }

    pub fn constant(&self) -> usize {
        self.constant
    }

    pub fn initial_similarity(&self) -> usize {
        self.initial
    }

    /// Protectors deleted so far, in order.
    pub fn deleted(&self) -> &[Edge] {
        &self.deleted
    }

    pub fn is_deleted(&self, e: Edge) -> bool {
        self.deleted_set.contains(&e)
    }

    /// Protectors charged to the target at position `ti`.
    pub fn charged(&self, ti: usize) -> &[Edge] {
        &self.charged[ti]
    }

    pub fn similarity(&self, t: Edge) -> Result<usize> {
        let ti = self.position(t)?;
        Ok(self.index.live_count(ti))
    }

    pub fn total_similarity(&self) -> usize {
        self.index.total_live()
    }

    pub fn dissimilarity(&self) -> usize {
        self.constant - self.index.total_live()
    }

    pub fn gain_total(&self, p: Edge) -> Result<usize> {
        self.check_protector(p)?;
        Ok(self.index.live_containing(p))
    }

    pub fn gain_split(&self, p: Edge, t: Edge) -> Result<GainRank> {
        self.check_protector(p)?;
        let ti = self.position(t)?;
        Ok(self.rank_for(p, ti))
    }

    /// Unchecked split gain for the target at position `ti`.
    pub(crate) fn rank_for(&self, p: Edge, ti: usize) -> GainRank {
        let total = self.index.live_containing(p);
        if total == 0 {
            return GainRank::default();
        }
        let own = self.index.live_containing_for(p, ti);
        GainRank {
            own,
            cross: total - own,
        }
    }

    /// Deletes `p`, optionally charging it to the target at position `ti`.
    pub fn delete(&mut self, p: Edge, charged_to: Option<usize>) -> Result<Broken> {
        self.check_protector(p)?;
        let broken = self.index.apply_deletion(p)?;
        self.deleted.push(p);
        self.deleted_set.insert(p);
        if let Some(ti) = charged_to {
            self.charged[ti].push(p);
        }
        Ok(broken)
    }

    fn position(&self, t: Edge) -> Result<usize> {
        self.index
            .target_position(t)
            .ok_or(Error::UnknownTarget(t.u() as u64, t.v() as u64))
    }

    fn check_protector(&self, p: Edge) -> Result<()> {
        if self.index.is_target(p) {
            return Err(Error::ProtectorIsTarget(p.u() as u64, p.v() as u64));
        }
        if self.deleted_set.contains(&p) {
            return Err(Error::AlreadyDeleted(p.u() as u64, p.v() as u64));
        }
        Ok(())
    }
}
