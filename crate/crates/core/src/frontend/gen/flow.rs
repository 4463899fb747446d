use crate::frontend::doc::{EdgeDecl, GnfDocument, GraphDecl, PredicateDecl};
use crate::frontend::Rng;
use crate::graph::GraphPredicate;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapacityMode {
    /// Every edge has capacity 1; default demand 4.
    Unit,
    /// Grid edges have capacity in [1, 4]; default demand 8.
    Random,
}

#[derive(Clone, Copy, Debug)]
pub struct FlowParams {
    pub width: usize,
    pub height: usize,
    pub mode: CapacityMode,
    /// Overrides the mode's default demand.
    pub demand: Option<u64>,
    pub seed: u64,
}

/// A grid digraph with edges rightward, leftward and downward, a super
/// source feeding every top-row node and a super sink fed by every
/// bottom-row node. The source and sink edges are forced on with the
/// largest grid capacity. Each grid edge is forced on with probability 1/4,
/// horizontal edges are forced off with probability 1/4, and the rest are free.
/// The flow atom from source to sink is asserted.
pub fn gen_flow(p: &FlowParams) -> GnfDocument {
    assert!(p.width >= 1 && p.height >= 1, "flow grid must be non-empty");
    let (w, h) = (p.width, p.height);
    let mut rng = Rng::new(p.seed);
    let (max_cap, default_demand) = match p.mode {
        CapacityMode::Unit => (1, 4),
        CapacityMode::Random => (4, 8),
    };
    let demand = p.demand.unwrap_or(default_demand);
    let (source, sink) = (w * h, w * h + 1);
    let mut doc = GnfDocument::new(0);
    let mode = match p.mode {
        CapacityMode::Unit => "unit",
        CapacityMode::Random => "random",
    };
    doc.comments
        .push(format!("flow {w} {h} {mode} demand {demand}"));
    doc.comments.push(format!("seed {}", p.seed));
    let mut g = GraphDecl {
        id: 0,
        directed: true,
        nodes: w * h + 2,
        edges: Vec::new(),
        predicates: Vec::new(),
    };
    let mut forced = Vec::new();
    let mut grid_edge = |doc: &mut GnfDocument,
                         g: &mut GraphDecl,
                         rng: &mut Rng,
                         u: usize,
                         v: usize,
                         horizontal: bool| {
        let var = doc.new_var();
        let weight = if max_cap == 1 {
            1
        } else {
            rng.range(1, max_cap)
        };
        g.edges.push(EdgeDecl { u, v, var, weight });
        match rng.below(4) {
            0 => forced.push(var as i32),
            1 if horizontal => forced.push(-(var as i32)),
            _ => {}
        }
    };
    for y in 0..h {
        for x in 0..w {
            let n = y * w + x;
            if x + 1 < w {
                grid_edge(&mut doc, &mut g, &mut rng, n, n + 1, true);
                grid_edge(&mut doc, &mut g, &mut rng, n + 1, n, true);
            }
            if y + 1 < h {
                grid_edge(&mut doc, &mut g, &mut rng, n, n + w, false);
            }
        }
    }
    for x in 0..w {
        for (u, v) in [(source, x), ((h - 1) * w + x, sink)] {
            let var = doc.new_var();
            g.edges.push(EdgeDecl {
                u,
                v,
                var,
                weight: max_cap,
            });
            forced.push(var as i32);
        }
    }
    for lit in forced {
        doc.add_clause(vec![lit]);
    }
    let atom = doc.new_var();
    g.predicates.push(PredicateDecl {
        pred: GraphPredicate::MaxFlowGeq {
            source,
            sink,
            bound: demand,
        },
        var: atom,
    });
    doc.add_clause(vec![atom as i32]);
    doc.graphs.push(g);
    doc
}
