//! Monotonicity of every evaluator and agreement with the oracle's
//! independent implementations.

use monosmt::frontend::{symbolic_graph, EdgeDecl, GraphDecl, TaskDecl};
use monosmt::graph::{GraphPredicate, MstBound};
use monosmt::oracle::eval::{demand_feasible, graph_predicate_holds};
use monosmt::sched::{edf_feasible, TaskSpec};
use monosmt::Var;
use proptest::prelude::*;

#[derive(Clone, Debug)]
struct Case {
    graph: GraphDecl,
    pred: GraphPredicate,
    enabled: Vec<bool>,
}

fn graph_strategy(directed: bool) -> impl Strategy<Value = GraphDecl> {
    (2usize..=5).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, 0u64..=4), 1..=6).prop_map(move |es| GraphDecl {
            id: 0,
            directed,
            nodes: n,
            edges: es
                .into_iter()
                .enumerate()
                .map(|(i, (u, v, weight))| EdgeDecl {
                    u,
                    v,
                    var: i as u32 + 1,
                    weight,
                })
                .collect(),
            predicates: Vec::new(),
        })
    })
}

fn case(kind: usize) -> impl Strategy<Value = Case> {
    let directed = kind < 3;
    graph_strategy(directed).prop_flat_map(move |g| {
        let (n, m) = (g.nodes, g.edges.len());
        let pred = (0..n, 0..n, 0u64..=8, 0..m, 0u64..=12, any::<bool>()).prop_map(
            move |(a, b, c, e, w, inf)| match kind {
                0 => GraphPredicate::Reach { from: a, to: b },
                1 => GraphPredicate::DistanceLeq {
                    from: a,
                    to: b,
                    bound: c,
                },
                2 => GraphPredicate::MaxFlowGeq {
                    source: a,
                    sink: b,
                    bound: c % 6,
                },
                3 => GraphPredicate::ComponentsLeq {
                    bound: 1 + c % n as u64,
                },
                4 => GraphPredicate::MstWeightLeq {
                    bound: if inf {
                        MstBound::Infinite
                    } else {
                        MstBound::Finite(w)
                    },
                },
                _ => GraphPredicate::MstEdge { edge: e },
            },
        );
        (Just(g), pred, prop::collection::vec(any::<bool>(), m)).prop_map(
            |(graph, pred, enabled)| Case {
                graph,
                pred,
                enabled,
            },
        )
    })
}

fn sched_strategy() -> impl Strategy<Value = (Vec<TaskDecl>, Vec<bool>)> {
    prop::collection::vec((0u64..=10, 1u64..=5, 0u64..=10), 1..=6).prop_flat_map(|ts| {
        let tasks: Vec<TaskDecl> = ts
            .into_iter()
            .enumerate()
            .map(|(i, (arrival, length, slack))| TaskDecl {
                arrival,
                length,
                deadline: arrival + length + slack - slack.min(1),
                var: i as u32 + 1,
            })
            .collect();
        let n = tasks.len();
        (Just(tasks), prop::collection::vec(any::<bool>(), n))
    })
}

fn edf(tasks: &[TaskDecl], on: &[bool]) -> bool {
    let specs: Vec<TaskSpec> = tasks
        .iter()
        .enumerate()
        .filter(|&(i, _)| on[i])
        .map(|(i, t)| TaskSpec {
            id: i,
            arrival: t.arrival,
            length: t.length,
            deadline: t.deadline,
            var: Var(i as u32),
        })
        .collect();
    edf_feasible(&specs).is_feasible()
}

fn check_monotone(c: &Case, flip: usize) -> Result<(), TestCaseError> {
    let g = symbolic_graph(&c.graph);
    let negative = matches!(c.pred, GraphPredicate::MstEdge { .. });
    let i = flip % c.enabled.len();
    // Move the bit in the direction that may only raise the predicate.
    let (mut lo, mut hi) = (c.enabled.clone(), c.enabled.clone());
    lo[i] = negative;
    hi[i] = !negative;
    prop_assert!(
        !c.pred.evaluate(&g, &lo) || c.pred.evaluate(&g, &hi),
        "{:?} on {:?}",
        c.pred,
        c.graph
    );
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reach_monotone(c in case(0), flip in 0usize..6) { check_monotone(&c, flip)?; }

    #[test]
    fn distance_monotone(c in case(1), flip in 0usize..6) { check_monotone(&c, flip)?; }

    #[test]
    fn maxflow_monotone(c in case(2), flip in 0usize..6) { check_monotone(&c, flip)?; }

    #[test]
    fn components_monotone(c in case(3), flip in 0usize..6) { check_monotone(&c, flip)?; }

    #[test]
    fn mst_weight_monotone(c in case(4), flip in 0usize..6) { check_monotone(&c, flip)?; }

    #[test]
    fn mst_edge_antitone(c in case(5), flip in 0usize..6) { check_monotone(&c, flip)?; }

    #[test]
    fn schedulable_antitone((tasks, on) in sched_strategy(), flip in 0usize..6) {
        let i = flip % tasks.len();
        let (mut lo, mut hi) = (on.clone(), on);
        lo[i] = true;
        hi[i] = false;
        prop_assert!(!edf(&tasks, &lo) || edf(&tasks, &hi));
    }

    #[test]
    fn graph_evaluators_agree_with_oracle(c in (0usize..6).prop_flat_map(case)) {
        let g = symbolic_graph(&c.graph);
        prop_assert_eq!(c.pred.evaluate(&g, &c.enabled), graph_predicate_holds(&c.graph, &c.pred, &c.enabled), "{:?}", c);
    }

    #[test]
    fn edf_agrees_with_demand_criterion((tasks, on) in sched_strategy()) {
        let accepted: Vec<&TaskDecl> = tasks.iter().zip(&on).filter(|(_, &b)| b).map(|(t, _)| t).collect();
        prop_assert_eq!(edf(&tasks, &on), demand_feasible(&accepted));
    }
}
