use super::*;
use crate::lit::Lit;
use crate::sat::{Reason, Trail};
use crate::smt::{Propagation, Theory};

fn lit(d: i32) -> Lit {
    Lit::from_dimacs(d)
}

fn graph(directed: bool, n: usize, edges: &[(usize, usize, u64)]) -> SymbolicGraph {
    let mut g = SymbolicGraph::new(0, directed, n);
    for (i, &(u, v, w)) in edges.iter().enumerate() {
        g.add_edge(u, v, Var(i as u32), w).unwrap();
    }
    g
}

/// Theory with a single predicate whose atom is the variable after the edges.
fn single(g: SymbolicGraph, p: GraphPredicate) -> (GraphTheory, Var) {
    let atom = Var(g.num_edges() as u32);
    (graph_theory(g, vec![(p, atom)]).unwrap(), atom)
}

fn trail_with(nvars: usize, th: &mut GraphTheory, assign: &[i32]) -> Trail {
    let mut t = Trail::default();
    for _ in 0..nvars {
        t.new_var();
    }
    for &d in assign {
        t.push(lit(d), Reason::Decision);
        th.on_assign(lit(d));
    }
    t
}

/// Propagates once and returns the explanation of the single result,
/// sorted for comparison.
fn outcome(th: &mut GraphTheory, nvars: usize, assign: &[i32]) -> (bool, Vec<Lit>) {
    let t = trail_with(nvars, th, assign);
    let view = t.view();
    let (conflict, mut clause) = match th.propagate(&view) {
        Propagation::Conflict(c) => (true, c),
        Propagation::Implied(imps) => {
            assert_eq!(imps.len(), 1, "expected one implication, got {imps:?}");
            (
                false,
                th.explain(&view, imps[0].lit, imps[0].tag, view.len()),
            )
        }
    };
    clause.sort();
    (conflict, clause)
}

fn sorted(v: &[i32]) -> Vec<Lit> {
    let mut c: Vec<Lit> = v.iter().map(|&d| lit(d)).collect();
    c.sort();
    c
}

#[test]
fn reach_is_reflexive() {
    let g = graph(true, 1, &[]);
    assert!(GraphPredicate::Reach { from: 0, to: 0 }.evaluate(&g, &[]));
    let (mut th, _) = single(g, GraphPredicate::Reach { from: 0, to: 0 });
    assert_eq!(outcome(&mut th, 1, &[]), (false, sorted(&[1])));
}

#[test]
fn reach_along_path() {
    let g = graph(true, 3, &[(0, 1, 1), (1, 2, 1)]);
    assert!(GraphPredicate::Reach { from: 0, to: 2 }.evaluate(&g, &[true, true]));
    assert!(!GraphPredicate::Reach { from: 0, to: 2 }.evaluate(&g, &[true, false]));
}

#[test]
fn reach_single_edge_clause() {
    let g = graph(true, 2, &[(0, 1, 1)]);
    let (mut th, _) = single(g, GraphPredicate::Reach { from: 0, to: 1 });
    assert_eq!(outcome(&mut th, 2, &[1]), (false, sorted(&[-1, 2])));
}

#[test]
fn reach_diamond_uses_one_path() {
    // 0->1->3 and 0->2->4->3: the shorter path is chosen.
    let g = graph(
        true,
        5,
        &[(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 4, 1), (4, 3, 1)],
    );
    let (mut th, _) = single(g, GraphPredicate::Reach { from: 0, to: 3 });
    assert_eq!(
        outcome(&mut th, 6, &[1, 2, 3, 4, 5]),
        (false, sorted(&[-1, -2, 6]))
    );
}

#[test]
fn reach_cut_of_disabled_out_edges() {
    let g = graph(true, 2, &[(0, 1, 1), (0, 1, 2)]);
    let (mut th, _) = single(g, GraphPredicate::Reach { from: 0, to: 1 });
    assert_eq!(outcome(&mut th, 3, &[-1, -2]), (false, sorted(&[1, 2, -3])));
}

#[test]
fn reach_isolated_target_is_unit() {
    let g = graph(true, 3, &[(0, 1, 1)]);
    let (mut th, _) = single(g, GraphPredicate::Reach { from: 0, to: 2 });
    assert_eq!(outcome(&mut th, 2, &[]), (false, sorted(&[-2])));
}

#[test]
fn distance_triangle() {
    let g = graph(true, 3, &[(0, 1, 1), (1, 2, 1), (0, 2, 3)]);
    let p = GraphPredicate::DistanceLeq {
        from: 0,
        to: 2,
        bound: 2,
    };
    assert_eq!(distance(&g, &[true; 3], 0, 2), Some(2));
    assert!(p.evaluate(&g, &[true; 3]));
    let (mut th, _) = single(g.clone(), p);
    assert_eq!(
        outcome(&mut th, 4, &[1, 2, 3]),
        (false, sorted(&[-1, -2, 4]))
    );
    // Node 1 is never visited over G_over, so e12 is not part of the cut.
    let (mut th, _) = single(g, p);
    assert_eq!(outcome(&mut th, 4, &[-1, -2, 3]), (false, sorted(&[1, -4])));
}

#[test]
fn distance_zero_to_self() {
    let g = graph(true, 2, &[(0, 1, 5)]);
    let (mut th, _) = single(
        g,
        GraphPredicate::DistanceLeq {
            from: 1,
            to: 1,
            bound: 0,
        },
    );
    assert_eq!(outcome(&mut th, 2, &[]), (false, sorted(&[2])));
}

#[test]
fn components_examples() {
    let g = graph(false, 3, &[(0, 1, 1), (1, 2, 1)]);
    let p = GraphPredicate::ComponentsLeq { bound: 2 };
    assert!(!p.evaluate(&g, &[false, false]));
    let (mut th, _) = single(g.clone(), GraphPredicate::ComponentsLeq { bound: 1 });
    assert_eq!(outcome(&mut th, 3, &[1, 2]), (false, sorted(&[-1, -2, 3])));
    let (mut th, _) = single(g, GraphPredicate::ComponentsLeq { bound: 1 });
    assert_eq!(outcome(&mut th, 3, &[-2]), (false, sorted(&[2, -3])));
}

#[test]
fn maxflow_examples() {
    let g = graph(true, 2, &[(0, 1, 3)]);
    let (mut th, _) = single(
        g.clone(),
        GraphPredicate::MaxFlowGeq {
            source: 0,
            sink: 1,
            bound: 0,
        },
    );
    assert_eq!(outcome(&mut th, 2, &[]), (false, sorted(&[2])));
    let (mut th, _) = single(
        g,
        GraphPredicate::MaxFlowGeq {
            source: 0,
            sink: 1,
            bound: 1,
        },
    );
    assert_eq!(outcome(&mut th, 2, &[-1]), (false, sorted(&[1, -2])));

    let g = graph(true, 4, &[(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)]);
    let p = GraphPredicate::MaxFlowGeq {
        source: 0,
        sink: 3,
        bound: 2,
    };
    assert!(p.evaluate(&g, &[true; 4]));
    let (mut th, _) = single(g, p);
    assert_eq!(
        outcome(&mut th, 5, &[1, 2, 3, 4]),
        (false, sorted(&[-1, -2, -3, -4, 5]))
    );
}

#[test]
fn mst_weight_triangle() {
    let g = graph(false, 3, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]);
    let p = GraphPredicate::MstWeightLeq {
        bound: MstBound::Finite(3),
    };
    assert!(p.evaluate(&g, &[true; 3]));
    let (mut th, _) = single(g, p);
    assert_eq!(
        outcome(&mut th, 4, &[1, 2, 3]),
        (false, sorted(&[-1, -2, 4]))
    );
}

#[test]
fn mst_connectivity_with_infinite_bound() {
    let g = graph(false, 2, &[(0, 1, 7)]);
    let (mut th, _) = single(
        g,
        GraphPredicate::MstWeightLeq {
            bound: MstBound::Infinite,
        },
    );
    assert_eq!(outcome(&mut th, 2, &[-1]), (false, sorted(&[1, -2])));
}

#[test]
fn mst_improving_edges_clause() {
    // Square 0-1-2-3 of weight-5 edges with a disabled weight-1 chord 0-2.
    let g = graph(
        false,
        4,
        &[(0, 1, 5), (1, 2, 5), (2, 3, 5), (3, 0, 5), (0, 2, 1)],
    );
    let (mut th, _) = single(
        g,
        GraphPredicate::MstWeightLeq {
            bound: MstBound::Finite(14),
        },
    );
    assert_eq!(
        outcome(&mut th, 6, &[1, 2, 3, 4, -5]),
        (false, sorted(&[5, -6]))
    );
}

#[test]
fn mst_edge_disabled_is_true() {
    let g = graph(false, 2, &[(0, 1, 1)]);
    let (mut th, _) = single(g, GraphPredicate::MstEdge { edge: 0 });
    assert_eq!(outcome(&mut th, 2, &[-1]), (false, sorted(&[1, 2])));
}

#[test]
fn mst_edge_heaviest_triangle_edge() {
    let g = graph(false, 3, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]);
    let p = GraphPredicate::MstEdge { edge: 2 };
    assert!(!p.evaluate(&g, &[true; 3]));
    let (mut th, _) = single(g, p);
    assert_eq!(
        outcome(&mut th, 4, &[1, 2, 3]),
        (false, sorted(&[-1, -2, -3, -4]))
    );
}

#[test]
fn mst_edge_forest_needs_cross_tree_edges() {
    // Edge 0 (0-1, w5) is alone in its tree; disabled light edges 1-2 and
    // 2-0 through a separate node could together replace it.
    let g = graph(false, 3, &[(0, 1, 5), (1, 2, 1), (2, 0, 1)]);
    let (mut th, _) = single(g, GraphPredicate::MstEdge { edge: 0 });
    assert_eq!(
        outcome(&mut th, 4, &[1, -2, -3]),
        (false, sorted(&[2, 3, 4]))
    );
}

#[test]
fn reach_hint_picks_first_unassigned_path_edge() {
    let g = graph(true, 3, &[(0, 1, 1), (1, 2, 1)]);
    let (mut th, atom) = single(g, GraphPredicate::Reach { from: 0, to: 2 });
    let t = trail_with(3, &mut th, &[3]);
    assert_eq!(th.decide_hint(&t.view()), Some(Var(0).pos()));
    let t = trail_with(3, &mut th, &[3, 1]);
    assert_eq!(th.decide_hint(&t.view()), Some(Var(1).pos()));
    let t = trail_with(3, &mut th, &[3, 1, 2]);
    assert_eq!(th.decide_hint(&t.view()), None);
    assert_eq!(atom, Var(2));
}

#[test]
fn registration_errors() {
    let dg = graph(true, 2, &[(0, 1, 1)]);
    let ug = graph(false, 2, &[(0, 1, 1)]);
    assert!(matches!(
        graph_theory(
            dg.clone(),
            vec![(GraphPredicate::ComponentsLeq { bound: 1 }, Var(5))]
        ),
        Err(GraphError::Directedness { .. })
    ));
    assert!(matches!(
        graph_theory(
            ug.clone(),
            vec![(GraphPredicate::Reach { from: 0, to: 1 }, Var(5))]
        ),
        Err(GraphError::Directedness { .. })
    ));
    assert!(matches!(
        graph_theory(
            dg.clone(),
            vec![(GraphPredicate::Reach { from: 0, to: 2 }, Var(5))]
        ),
        Err(GraphError::NodeOutOfRange { .. })
    ));
    assert!(matches!(
        graph_theory(ug, vec![(GraphPredicate::MstEdge { edge: 3 }, Var(5))]),
        Err(GraphError::UnknownEdge(3))
    ));
    assert!(matches!(
        graph_theory(dg, vec![(GraphPredicate::Reach { from: 0, to: 1 }, Var(0))]),
        Err(GraphError::Binding(_))
    ));
}
