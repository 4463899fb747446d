//! Graph predicates over symbolic graphs whose edges are Boolean variables.
//!
//! Each predicate is evaluated on `G_under` (assigned-true edges only) and
//! `G_over` (every edge not assigned false). The witnesses returned for
//! conflict clauses are paths, cuts and spanning forests of those graphs.

mod flow;
mod forest;
mod paths;
mod symbolic;
mod unionfind;

pub use flow::{max_flow, residual_reachable, FlowResult};
pub use forest::{components, crossing_disabled, kruskal, Components, SpanningForest};
pub use paths::{bfs, dijkstra, disabled_frontier, distance, reaches, SearchTree};
pub use symbolic::{EdgeSpec, GraphError, SymbolicGraph};
pub use unionfind::UnionFind;

use crate::lit::{LBool, Var};
use crate::smt::{
    AtomId, Bindings, Completion, MonotonicPredicates, MonotonicTheory, Polarity, Side,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MstBound {
    Finite(u64),
    /// Satisfied by any finite spanning tree, so "the graph is connected".
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphPredicate {
    Reach {
        from: usize,
        to: usize,
    },
    DistanceLeq {
        from: usize,
        to: usize,
        bound: u64,
    },
    ComponentsLeq {
        bound: u64,
    },
    MaxFlowGeq {
        source: usize,
        sink: usize,
        bound: u64,
    },
    MstWeightLeq {
        bound: MstBound,
    },
    /// True when the edge is disabled or belongs to the minimum spanning
    /// forest. Enabling other edges can only make it false.
    MstEdge {
        edge: usize,
    },
}

impl GraphPredicate {
    pub fn name(&self) -> &'static str {
        match self {
            GraphPredicate::Reach { .. } => "reach",
            GraphPredicate::DistanceLeq { .. } => "distance_leq",
            GraphPredicate::ComponentsLeq { .. } => "components_leq",
            GraphPredicate::MaxFlowGeq { .. } => "maxflow_geq",
            GraphPredicate::MstWeightLeq { .. } => "mst_weight_leq",
            GraphPredicate::MstEdge { .. } => "mst_edge",
        }
    }

    pub fn polarity(&self) -> Polarity {
        match self {
            GraphPredicate::MstEdge { .. } => Polarity::Negative,
            _ => Polarity::Positive,
        }
    }

    pub fn requires_directed(&self) -> bool {
        matches!(
            self,
            GraphPredicate::Reach { .. }
                | GraphPredicate::DistanceLeq { .. }
                | GraphPredicate::MaxFlowGeq { .. }
        )
    }

    /// Checks node ranges, edge ids and directedness against `g`.
    pub fn validate(&self, g: &SymbolicGraph) -> Result<(), GraphError> {
        if self.requires_directed() != g.is_directed() {
            return Err(GraphError::Directedness {
                predicate: self.name(),
                directed: self.requires_directed(),
            });
        }
        match *self {
            GraphPredicate::Reach { from, to } | GraphPredicate::DistanceLeq { from, to, .. } => {
                g.check_node(from)?;
                g.check_node(to)
            }
            GraphPredicate::MaxFlowGeq { source, sink, .. } => {
                g.check_node(source)?;
                g.check_node(sink)
            }
            GraphPredicate::MstEdge { edge } if edge >= g.num_edges() => {
                Err(GraphError::UnknownEdge(edge))
            }
            _ => Ok(()),
        }
    }

    /// Truth value on a concrete edge set.
    pub fn evaluate(&self, g: &SymbolicGraph, enabled: &[bool]) -> bool {
        match *self {
            GraphPredicate::Reach { from, to } => reaches(g, enabled, from, to),
            GraphPredicate::DistanceLeq { from, to, bound } => {
                let tree = dijkstra(g, enabled, from, Some(to), bound);
                tree.visited[to] && tree.dist[to] <= bound
            }
            GraphPredicate::ComponentsLeq { bound } => components(g, enabled).count as u64 <= bound,
            GraphPredicate::MaxFlowGeq {
                source,
                sink,
                bound,
            } => bound == 0 || max_flow(g, enabled, source, sink, Some(bound)).value >= bound,
            GraphPredicate::MstWeightLeq { bound } => mst_within(&kruskal(g, enabled), bound),
            GraphPredicate::MstEdge { edge } => !enabled[edge] || kruskal(g, enabled).in_tree[edge],
        }
    }
}

fn mst_within(f: &SpanningForest, bound: MstBound) -> bool {
    f.connected()
        && match bound {
            MstBound::Finite(c) => f.weight <= c,
            MstBound::Infinite => true,
        }
}

/// The predicate evaluators of one symbolic graph.
#[derive(Debug)]
pub struct GraphSolver {
    graph: SymbolicGraph,
    preds: Vec<GraphPredicate>,
    // Spanning forests keyed by completion epoch: under, over, one-off.
    forests: ForestMemo,
}

pub type GraphTheory = MonotonicTheory<GraphSolver>;

type ForestMemo = [Option<(Option<u64>, SpanningForest)>; 3];

fn memo_forest<'a>(
    memo: &'a mut ForestMemo,
    g: &SymbolicGraph,
    c: &Completion<'_>,
) -> &'a SpanningForest {
    let slot = match (c.epoch, c.side) {
        (None, _) => 2,
        (Some(_), Side::Under) => 0,
        (Some(_), Side::Over) => 1,
    };
    let fresh = match &memo[slot] {
        Some((epoch, _)) => c.epoch.is_none() || *epoch != c.epoch,
        None => true,
    };
    if fresh {
        memo[slot] = Some((c.epoch, kruskal(g, c.values)));
    }
    &memo[slot].as_ref().unwrap().1
}

/// Builds the theory for `graph` with `(predicate, atom)` pairs. Edge `i`
/// becomes argument `i` of every predicate.
pub fn graph_theory(
    graph: SymbolicGraph,
    preds: Vec<(GraphPredicate, Var)>,
) -> Result<GraphTheory, GraphError> {
    let mut bindings = Bindings::new();
    for e in graph.edges() {
        let i = bindings.register_argument(e.var)?;
        if i != e.id {
            return Err(GraphError::DuplicateEdgeVar(e.var));
        }
    }
    let edge_vars: Vec<Var> = graph.edges().iter().map(|e| e.var).collect();
    for (p, var) in &preds {
        p.validate(&graph)?;
        bindings.register_predicate(*var, p.polarity(), &edge_vars)?;
    }
    let solver = GraphSolver {
        graph,
        preds: preds.into_iter().map(|(p, _)| p).collect(),
        forests: [None, None, None],
    };
    Ok(MonotonicTheory::new(solver, bindings))
}

impl GraphSolver {
    pub fn graph(&self) -> &SymbolicGraph {
        &self.graph
    }

    pub fn predicates(&self) -> &[GraphPredicate] {
        &self.preds
    }

    /// Edges justifying the value of `pred` on `c`: enabled edges on the
    /// under side, disabled edges on the over side.
    fn witness_edges(&mut self, pred: GraphPredicate, c: &Completion<'_>) -> Vec<usize> {
        let GraphSolver {
            graph: g, forests, ..
        } = self;
        let g = &*g;
        let on = c.values;
        match (pred, c.side) {
            (GraphPredicate::Reach { from, to }, Side::Under) => bfs(g, on, from, Some(to))
                .path_to(g, to)
                .expect("reach witness requested without a path"),
            (
                GraphPredicate::Reach { from, .. } | GraphPredicate::DistanceLeq { from, .. },
                Side::Over,
            ) => disabled_frontier(g, on, &bfs(g, on, from, None).visited),
            (GraphPredicate::DistanceLeq { from, to, bound }, Side::Under) => {
                let tree = dijkstra(g, on, from, Some(to), bound);
                assert!(
                    tree.visited[to] && tree.dist[to] <= bound,
                    "distance witness requested without a path"
                );
                tree.path_to(g, to).unwrap()
            }
            (GraphPredicate::ComponentsLeq { .. }, Side::Under) => components(g, on).forest,
            (GraphPredicate::ComponentsLeq { .. }, Side::Over) => {
                crossing_disabled(g, on, &components(g, on).label)
            }
            (
                GraphPredicate::MaxFlowGeq {
                    source,
                    sink,
                    bound,
                },
                Side::Under,
            ) => {
                let r = max_flow(g, on, source, sink, Some(bound));
                (0..g.num_edges()).filter(|&e| r.flow[e] > 0).collect()
            }
            (GraphPredicate::MaxFlowGeq { source, sink, .. }, Side::Over) => {
                let r = max_flow(g, on, source, sink, None);
                let side = residual_reachable(g, on, &r.flow, source);
                g.edges()
                    .iter()
                    .filter(|e| !on[e.id] && side[e.u] && !side[e.v])
                    .map(|e| e.id)
                    .collect()
            }
            (GraphPredicate::MstWeightLeq { .. }, Side::Under) => {
                memo_forest(forests, g, c).tree_edges.clone()
            }
            (GraphPredicate::MstWeightLeq { .. }, Side::Over) => {
                let f = memo_forest(forests, g, c);
                if f.connected() {
                    f.improving_disabled(g, on)
                } else {
                    f.smallest_tree_cut(g, on)
                }
            }
            (GraphPredicate::MstEdge { edge }, Side::Over) => {
                if !on[edge] {
                    return vec![edge];
                }
                let f = memo_forest(forests, g, c);
                assert!(
                    f.in_tree[edge],
                    "mst_edge witness requested for a non-tree edge"
                );
                let below = f.below(g, edge);
                let root = f.root[g.edge(edge).u];
                // A disabled edge can only evict `edge` as part of a path of
                // edges lighter than it between the two sides of its cut.
                g.edges()
                    .iter()
                    .filter(|e| !on[e.id] && e.u != e.v && g.heavier(edge, e.id))
                    .filter(|e| {
                        let in_tree = f.root[e.u] == root && f.root[e.v] == root;
                        !f.same_tree(e.u, e.v) || (in_tree && below[e.u] != below[e.v])
                    })
                    .map(|e| e.id)
                    .collect()
            }
            (GraphPredicate::MstEdge { edge }, Side::Under) => {
                let f = memo_forest(forests, g, c);
                let spec = g.edge(edge);
                assert!(
                    on[edge] && !f.in_tree[edge],
                    "mst_edge witness requested for a tree edge"
                );
                let mut w = f
                    .path(g, spec.u, spec.v)
                    .expect("endpoints of an enabled edge share a tree");
                w.push(edge);
                w
            }
        }
    }
}

impl MonotonicPredicates for GraphSolver {
    fn evaluate(&mut self, atom: AtomId, c: &Completion<'_>) -> bool {
        let pred = self.preds[atom.index()];
        match pred {
            GraphPredicate::MstWeightLeq { bound } => {
                mst_within(memo_forest(&mut self.forests, &self.graph, c), bound)
            }
            GraphPredicate::MstEdge { edge } => {
                !c.get(edge) || memo_forest(&mut self.forests, &self.graph, c).in_tree[edge]
            }
            _ => pred.evaluate(&self.graph, c.values),
        }
    }

    fn witness(&mut self, atom: AtomId, c: &Completion<'_>) -> Option<Vec<usize>> {
        let pred = self.preds[atom.index()];
        Some(self.witness_edges(pred, c))
    }

    fn decide_hint(
        &mut self,
        under: &Completion<'_>,
        over: &Completion<'_>,
        atom_values: &[LBool],
    ) -> Option<usize> {
        let g = &self.graph;
        for (i, pred) in self.preds.iter().enumerate() {
            let GraphPredicate::Reach { from, to } = *pred else {
                continue;
            };
            if !atom_values[i].is_true() || reaches(g, under.values, from, to) {
                continue;
            }
            let path = bfs(g, over.values, from, Some(to)).path_to(g, to)?;
            return path.into_iter().find(|&e| !under.get(e));
        }
        None
    }
}

#[cfg(test)]
mod tests;
