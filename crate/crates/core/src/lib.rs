//! Protecting sensitive links of a social graph against motif-based link
//! prediction by deleting a budgeted set of protector edges.
//!
//! The typical flow loads a [`Graph`], picks a [`TargetSet`], removes the
//! targets, runs one of the selectors in [`select`] and checks the result
//! with [`attacks`] and [`utility`].

pub mod attacks;
pub mod budget;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod motif;
pub mod objective;
pub mod select;
pub mod utility;

pub use budget::{dbd, tbd, BudgetVector, Division};
pub use error::{Error, Result};
pub use graph::{
    load_edge_list, load_edge_list_path, sample_targets, Edge, FormatHint, Graph, NodeId, TargetSet,
};
pub use motif::{enumerate_target_subgraphs, MotifKind, SubgraphIndex, TargetSubgraph};
pub use objective::{GainRank, ObjectiveState};
pub use select::{
    critical_budget, ct_greedy, exact_optimum, rd_baseline, rdt_baseline, sgb_greedy, wt_greedy,
    Method, SelectOptions, SelectionResult,
};
