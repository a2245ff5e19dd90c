mod common;

use common::*;
use tpp_core::select::{exact_optimum, VisitOrder};
use tpp_core::{
    critical_budget, ct_greedy, sgb_greedy, wt_greedy, BudgetVector, MotifKind, ObjectiveState,
    SelectOptions, SubgraphIndex,
};

const TRI: MotifKind = MotifKind::Triangle;

fn budgets(fx: &Fixture, pairs: &[((u64, u64), usize)]) -> BudgetVector {
    let mut v = BudgetVector::zeros(fx.targets.len());
    for &((a, b), k) in pairs {
        let t = fx.original.pair(a, b).unwrap();
        v.per_target[fx.targets.position(t).unwrap()] = k;
    }
    v
}

fn labels(fx: &Fixture, edges: &[tpp_core::Edge]) -> Vec<(u64, u64)> {
    edges.iter().map(|&e| fx.released.edge_labels(e)).collect()
}

#[test]
fn participation_structure() {
    let fx = fixture();
    let index = SubgraphIndex::build(&fx.released, &fx.targets, TRI).unwrap();
    assert_eq!(index.total_live(), 7);
    let e = |p: (u64, u64)| fx.released.pair(p.0, p.1).unwrap();
    let owners = |p| {
        let mut v: Vec<_> = index
            .live_owners(e(p))
            .map(|ti| fx.targets.get(ti).unwrap())
            .collect();
        v.sort();
        v.dedup();
        v.into_iter()
            .map(|t| fx.original.edge_labels(t))
            .collect::<Vec<_>>()
    };
    assert_eq!(index.live_containing(e(P1)), 2);
    assert_eq!(owners(P1), vec![T1, T2]);
    assert_eq!(index.live_containing(e(P2)), 3);
    assert_eq!(owners(P2), vec![T2, T4, T3]);
    assert_eq!(index.live_containing(e(P3)), 2);
    assert_eq!(owners(P3), vec![T4, T5]);
    assert_eq!(index.live_containing(e(P4)), 1);

    let state = ObjectiveState::new(index);
    let t2 = fx.original.pair(T2.0, T2.1).unwrap();
    assert_eq!(state.similarity(t2).unwrap(), 2);
    let rank = state.gain_split(e(P2), t2).unwrap();
    assert_eq!((rank.own, rank.cross), (1, 2));
}

#[test]
fn sgb_with_two_deletions() {
    let fx = fixture();
    for opts in [
        SelectOptions::full(),
        SelectOptions::restricted().verified(),
    ] {
        let r = sgb_greedy(&fx.released, &fx.targets, TRI, 2, opts).unwrap();
        assert_eq!(labels(&fx, &r.protector_edges()), vec![P2, P3]);
        assert_eq!(r.gains(), vec![3, 2]);
        assert_eq!(r.total_gain(), 5);
        assert_eq!(r.trace, vec![7, 4, 2]);
    }
}

#[test]
fn cross_target_with_unit_budgets() {
    let fx = fixture();
    let b = budgets(&fx, &[(T1, 1), (T2, 1)]);
    let r = ct_greedy(
        &fx.released,
        &fx.targets,
        TRI,
        &b,
        SelectOptions::restricted(),
    )
    .unwrap();
    assert_eq!(labels(&fx, &r.protector_edges()), vec![P2, P1]);
    let charged: Vec<_> = r
        .protectors
        .iter()
        .map(|p| fx.original.edge_labels(p.charged_to.unwrap()))
        .collect();
    assert_eq!(charged, vec![T2, T1]);
    assert_eq!(r.total_gain(), 4);
}

#[test]
fn within_target_with_unit_budgets() {
    let fx = fixture();
    let b = budgets(&fx, &[(T1, 1), (T2, 1)]);
    let r = wt_greedy(&fx.released, &fx.targets, TRI, &b, SelectOptions::full()).unwrap();
    assert_eq!(labels(&fx, &r.protector_edges()), vec![P1, P4]);
    assert_eq!(r.total_gain(), 3);
    let ordered = SelectOptions {
        visit_order: VisitOrder::DescendingSimilarity,
        ..SelectOptions::restricted()
    };
    let r = wt_greedy(&fx.released, &fx.targets, TRI, &b, ordered).unwrap();
    assert_eq!(r.total_gain(), 4);
}

#[test]
fn optimum_and_critical_budget() {
    let fx = fixture();
    let index = SubgraphIndex::build(&fx.released, &fx.targets, TRI).unwrap();
    assert_eq!(exact_optimum(&index, 2).unwrap().gain, 5);
    assert_eq!(exact_optimum(&index, 3).unwrap().gain, 6);
    assert_eq!(exact_optimum(&index, 4).unwrap().gain, 7);
    assert_eq!(critical_budget(&fx.released, &fx.targets, TRI).unwrap(), 4);
}

#[test]
fn deleting_p3_breaks_two() {
    let fx = fixture();
    let mut state =
        ObjectiveState::new(SubgraphIndex::build(&fx.released, &fx.targets, TRI).unwrap());
    let broken = state
        .delete(fx.released.pair(P3.0, P3.1).unwrap(), None)
        .unwrap();
    assert_eq!(broken.per_target, vec![0, 0, 0, 1, 1]);
    assert_eq!(state.dissimilarity(), 2);
}
