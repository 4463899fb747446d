use super::grid_edges;
use crate::frontend::doc::{EdgeDecl, GnfDocument, GraphDecl, PredicateDecl};
use crate::frontend::Rng;
use crate::graph::{GraphPredicate, MstBound};

/// A grid digraph with both directions of every neighbour pair. Each edge
/// is forced on with probability 1/8, forced off with a per-instance
/// probability between 2/8 and 5/8, and otherwise free. The bottom-right corner must be reachable from the
/// top-left one, and some other random node pair must be disconnected.
pub fn gen_reach_grid(w: usize, h: usize, seed: u64) -> GnfDocument {
    assert!(w * h >= 2, "reach grid needs two nodes");
    let mut rng = Rng::new(seed);
    let mut doc = GnfDocument::new(0);
    doc.comments.push(format!("reach grid {w} {h}"));
    doc.comments.push(format!("seed {seed}"));
    let mut g = GraphDecl {
        id: 0,
        directed: true,
        nodes: w * h,
        edges: Vec::new(),
        predicates: Vec::new(),
    };
    let off = 2 + rng.below(4);
    for (a, b) in grid_edges(w, h) {
        for (u, v) in [(a, b), (b, a)] {
            let var = doc.new_var();
            g.edges.push(EdgeDecl {
                u,
                v,
                var,
                weight: 1,
            });
            let r = rng.below(8);
            if r == 0 {
                doc.add_clause(vec![var as i32]);
            } else if r <= off {
                doc.add_clause(vec![-(var as i32)]);
            }
        }
    }
    let n = (w * h) as u64;
    let reach = doc.new_var();
    g.predicates.push(PredicateDecl {
        pred: GraphPredicate::Reach {
            from: 0,
            to: w * h - 1,
        },
        var: reach,
    });
    doc.add_clause(vec![reach as i32]);
    let from = rng.below(n) as usize;
    let to = (from + 1 + rng.below(n - 1) as usize) % (w * h);
    let cut = doc.new_var();
    g.predicates.push(PredicateDecl {
        pred: GraphPredicate::Reach { from, to },
        var: cut,
    });
    doc.add_clause(vec![-(cut as i32)]);
    doc.graphs.push(g);
    doc
}

/// A weighted undirected grid for bound minimization. Weights are in
/// [1, 20]. Each edge is forced on or off with probability 1/10 each, and
/// a sixth as many random edge pairs as there are edges are mutually
/// exclusive. The graph must be connected, and an
/// unasserted `mst_weight_leq` atom is recorded as the `bound atom`.
pub fn gen_weighted_grid(w: usize, h: usize, seed: u64) -> GnfDocument {
    let mut rng = Rng::new(seed);
    let mut doc = GnfDocument::new(0);
    doc.comments.push(format!("weighted grid {w} {h}"));
    doc.comments.push(format!("seed {seed}"));
    let mut g = GraphDecl {
        id: 0,
        directed: false,
        nodes: w * h,
        edges: Vec::new(),
        predicates: Vec::new(),
    };
    for (u, v) in grid_edges(w, h) {
        let var = doc.new_var();
        g.edges.push(EdgeDecl {
            u,
            v,
            var,
            weight: rng.range(1, 20),
        });
        match rng.below(10) {
            0 => doc.add_clause(vec![var as i32]),
            1 => doc.add_clause(vec![-(var as i32)]),
            _ => {}
        }
    }
    let m = g.edges.len() as u64;
    if m >= 2 {
        for _ in 0..m / 6 {
            let a = rng.below(m) as usize;
            let b = (a + 1 + rng.below(m - 1) as usize) % m as usize;
            doc.add_clause(vec![-(g.edges[a].var as i32), -(g.edges[b].var as i32)]);
        }
    }
    let connected = doc.new_var();
    g.predicates.push(PredicateDecl {
        pred: GraphPredicate::MstWeightLeq {
            bound: MstBound::Infinite,
        },
        var: connected,
    });
    doc.add_clause(vec![connected as i32]);
    let total = g.edges.iter().map(|e| e.weight).sum();
    let atom = doc.new_var();
    g.predicates.push(PredicateDecl {
        pred: GraphPredicate::MstWeightLeq {
            bound: MstBound::Finite(total),
        },
        var: atom,
    });
    doc.comments.push(format!("bound atom {atom}"));
    doc.graphs.push(g);
    doc
}
