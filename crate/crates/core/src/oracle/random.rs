//! Small seeded random instances that fit the brute-force budget.

use super::VAR_BUDGET;
use crate::frontend::{
    EdgeDecl, GnfDocument, GraphDecl, PredicateDecl, ProcessorDecl, Rng, TaskDecl,
};
use crate::graph::{GraphPredicate, MstBound};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoryKind {
    Reach,
    Distance,
    Components,
    MaxFlow,
    MstWeight,
    MstEdge,
    Schedulable,
}

impl TheoryKind {
    pub const ALL: [TheoryKind; 7] = [
        TheoryKind::Reach,
        TheoryKind::Distance,
        TheoryKind::Components,
        TheoryKind::MaxFlow,
        TheoryKind::MstWeight,
        TheoryKind::MstEdge,
        TheoryKind::Schedulable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoryKind::Reach => "reach",
            TheoryKind::Distance => "distance_leq",
            TheoryKind::Components => "components_leq",
            TheoryKind::MaxFlow => "maxflow_geq",
            TheoryKind::MstWeight => "mst_weight_leq",
            TheoryKind::MstEdge => "mst_edge",
            TheoryKind::Schedulable => "schedulable",
        }
    }

    fn directed(self) -> bool {
        matches!(
            self,
            TheoryKind::Reach | TheoryKind::Distance | TheoryKind::MaxFlow
        )
    }
}

fn random_predicate(kind: TheoryKind, rng: &mut Rng, nodes: usize, edges: usize) -> GraphPredicate {
    let mut node = || rng.below(nodes as u64) as usize;
    let (a, b) = (node(), node());
    match kind {
        TheoryKind::Reach => GraphPredicate::Reach { from: a, to: b },
        TheoryKind::Distance => GraphPredicate::DistanceLeq {
            from: a,
            to: b,
            bound: rng.range(0, 8),
        },
        TheoryKind::Components => GraphPredicate::ComponentsLeq {
            bound: rng.range(1, nodes as u64),
        },
        TheoryKind::MaxFlow => GraphPredicate::MaxFlowGeq {
            source: a,
            sink: b,
            bound: rng.range(0, 5),
        },
        TheoryKind::MstWeight => GraphPredicate::MstWeightLeq {
            bound: if rng.chance(1, 4) {
                MstBound::Infinite
            } else {
                MstBound::Finite(rng.range(0, 12))
            },
        },
        TheoryKind::MstEdge => GraphPredicate::MstEdge {
            edge: rng.below(edges as u64) as usize,
        },
        TheoryKind::Schedulable => unreachable!("not a graph predicate"),
    }
}

fn random_graph(doc: &mut GnfDocument, kind: TheoryKind, rng: &mut Rng) {
    let nodes = rng.range(2, 5) as usize;
    let m = rng.range(1, 6) as usize;
    let mut g = GraphDecl {
        id: 0,
        directed: kind.directed(),
        nodes,
        edges: Vec::new(),
        predicates: Vec::new(),
    };
    for _ in 0..m {
        let u = rng.below(nodes as u64) as usize;
        // Self loops are rare but allowed.
        let v = if rng.chance(1, 12) {
            u
        } else {
            (u + 1 + rng.below(nodes as u64 - 1) as usize) % nodes
        };
        let weight = rng.range(0, 4);
        let var = doc.new_var();
        g.edges.push(EdgeDecl { u, v, var, weight });
    }
    for _ in 0..rng.range(1, 3) {
        let pred = random_predicate(kind, rng, nodes, m);
        let var = doc.new_var();
        g.predicates.push(PredicateDecl { pred, var });
    }
    doc.graphs.push(g);
}

fn random_processors(doc: &mut GnfDocument, rng: &mut Rng) {
    let procs = rng.range(1, 2) as usize;
    for p in 0..procs {
        let tasks = (0..rng.range(1, 6))
            .map(|_| {
                let arrival = rng.range(0, 10);
                let length = rng.range(1, 5);
                // Occasionally one unit too tight to fit alone.
                let deadline = arrival + rng.range(length - 1, length + 7);
                TaskDecl {
                    arrival,
                    length,
                    deadline,
                    var: doc.new_var(),
                }
            })
            .collect();
        let schedulable = vec![doc.new_var()];
        doc.processors.push(ProcessorDecl {
            id: p as u32,
            tasks,
            schedulable,
        });
    }
}

/// A random instance of one theory: a graph with at most 5 nodes and 6
/// edges carrying one to three atoms, or one or two processors with at most
/// 6 tasks each. Some free glue variables and random clauses over all
/// variables are added, keeping within [`VAR_BUDGET`].
pub fn random_instance(kind: TheoryKind, seed: u64) -> GnfDocument {
    let mut rng = Rng::new(seed ^ ((kind as u64) << 56));
    let mut doc = GnfDocument::new(0);
    doc.comments.push(format!("random {} {seed}", kind.name()));
    match kind {
        TheoryKind::Schedulable => random_processors(&mut doc, &mut rng),
        _ => random_graph(&mut doc, kind, &mut rng),
    }
    let glue = rng.range(0, 6).min(VAR_BUDGET as u64 - doc.num_vars as u64);
    for _ in 0..glue {
        doc.new_var();
    }
    // Pin some atoms so the theories have to propagate and explain.
    let atoms: Vec<u32> = doc.predicate_vars();
    for v in atoms {
        match rng.below(4) {
            0 => doc.add_clause(vec![v as i32]),
            1 => doc.add_clause(vec![-(v as i32)]),
            _ => {}
        }
    }
    let n = doc.num_vars as u64;
    for _ in 0..rng.range(0, 10) {
        let width = rng.range(1, 3);
        let clause = (0..width)
            .map(|_| {
                let v = rng.range(1, n) as i32;
                if rng.chance(1, 2) {
                    v
                } else {
                    -v
                }
            })
            .collect::<Vec<_>>();
        doc.add_clause(clause);
    }
    doc
}
