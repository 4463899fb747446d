use super::grid_edges;
use crate::frontend::doc::{EdgeDecl, GnfDocument, GraphDecl, PredicateDecl};
use crate::frontend::Rng;
use crate::graph::{GraphPredicate, MstBound};

#[derive(Clone, Copy, Debug)]
pub struct MazeParams {
    pub width: usize,
    pub height: usize,
    pub seed: u64,
    /// Adds an unasserted `mst_weight_leq` atom on G1 for `minimize`.
    pub bound_atom: bool,
}

/// Where the pieces of a generated maze live in its document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MazeLayout {
    pub width: usize,
    pub height: usize,
    /// Graph ids of the weighted undirected grid and the corridor digraph.
    pub g1: u32,
    pub g2: u32,
    pub start: usize,
    pub finish: usize,
}

impl MazeLayout {
    /// Reads the layout from the document's `maze` comment.
    pub fn from_doc(doc: &GnfDocument) -> Option<MazeLayout> {
        doc.comments.iter().find_map(|c| {
            let mut it = c.split_whitespace();
            if it.next()? != "maze" {
                return None;
            }
            let mut num = || it.next()?.parse::<usize>().ok();
            Some(MazeLayout {
                width: num()?,
                height: num()?,
                g1: num()? as u32,
                g2: num()? as u32,
                start: num()?,
                finish: num()?,
            })
        })
    }

    fn comment(&self) -> String {
        format!(
            "maze {} {} {} {} {} {}",
            self.width, self.height, self.g1, self.g2, self.start, self.finish
        )
    }
}

/// A maze as two coupled graphs. G1 is the undirected grid with random
/// weights in [1, 1000] and free edges, required to be connected. A grid
/// edge is a corridor iff it is enabled in G1 and lies in G1's minimum
/// spanning tree; corridors are the two directed unit edges of G2. The
/// shortest start-finish path in G2 must be between 3 and 4 times the width.
pub fn gen_maze(p: &MazeParams) -> GnfDocument {
    assert!(
        p.width >= 2 && p.height >= 2,
        "maze needs at least a 2x2 grid"
    );
    let (w, h) = (p.width, p.height);
    let mut rng = Rng::new(p.seed);
    let layout = MazeLayout {
        width: w,
        height: h,
        g1: 1,
        g2: 2,
        start: 0,
        finish: w * h - 1,
    };
    let mut doc = GnfDocument::new(0);
    doc.comments.push(layout.comment());
    doc.comments.push(format!("seed {}", p.seed));
    let grid = grid_edges(w, h);
    let mut g1 = GraphDecl {
        id: layout.g1,
        directed: false,
        nodes: w * h,
        edges: Vec::new(),
        predicates: Vec::new(),
    };
    let mut g2 = GraphDecl {
        id: layout.g2,
        directed: true,
        nodes: w * h,
        edges: Vec::new(),
        predicates: Vec::new(),
    };
    for &(u, v) in &grid {
        let var = doc.new_var();
        g1.edges.push(EdgeDecl {
            u,
            v,
            var,
            weight: rng.range(1, 1000),
        });
    }
    for (i, &(u, v)) in grid.iter().enumerate() {
        let e1 = g1.edges[i].var as i32;
        let tree = doc.new_var();
        g1.predicates.push(PredicateDecl {
            pred: GraphPredicate::MstEdge { edge: i },
            var: tree,
        });
        let f = doc.new_var();
        let b = doc.new_var();
        g2.edges.push(EdgeDecl {
            u,
            v,
            var: f,
            weight: 1,
        });
        g2.edges.push(EdgeDecl {
            u: v,
            v: u,
            var: b,
            weight: 1,
        });
        let (t, f, b) = (tree as i32, f as i32, b as i32);
        doc.add_clause(vec![-f, t]);
        doc.add_clause(vec![-f, e1]);
        doc.add_clause(vec![-t, -e1, f]);
        doc.add_clause(vec![-b, f]);
        doc.add_clause(vec![-f, b]);
    }
    let connected = doc.new_var();
    g1.predicates.push(PredicateDecl {
        pred: GraphPredicate::MstWeightLeq {
            bound: MstBound::Infinite,
        },
        var: connected,
    });
    doc.add_clause(vec![connected as i32]);
    if p.bound_atom {
        let total: u64 = g1.edges.iter().map(|e| e.weight).sum();
        let var = doc.new_var();
        g1.predicates.push(PredicateDecl {
            pred: GraphPredicate::MstWeightLeq {
                bound: MstBound::Finite(total),
            },
            var,
        });
        doc.comments.push(format!("bound atom {var}"));
    }
    let (s, t) = (layout.start, layout.finish);
    let upper = doc.new_var();
    g2.predicates.push(PredicateDecl {
        pred: GraphPredicate::DistanceLeq {
            from: s,
            to: t,
            bound: 4 * w as u64,
        },
        var: upper,
    });
    doc.add_clause(vec![upper as i32]);
    let lower = doc.new_var();
    g2.predicates.push(PredicateDecl {
        pred: GraphPredicate::DistanceLeq {
            from: s,
            to: t,
            bound: 3 * w as u64 - 1,
        },
        var: lower,
    });
    doc.add_clause(vec![-(lower as i32)]);
    doc.graphs.push(g1);
    doc.graphs.push(g2);
    doc
}
