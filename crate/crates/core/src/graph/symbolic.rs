use thiserror::Error;

use crate::lit::Var;
use crate::smt::BindingError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("node {node} is out of range for a graph with {nodes} nodes")]
    NodeOutOfRange { node: usize, nodes: usize },
    #[error("{predicate} requires {} graph", if *.directed { "a directed" } else { "an undirected" })]
    Directedness {
        predicate: &'static str,
        directed: bool,
    },
    #[error("edge {0} does not exist")]
    UnknownEdge(usize),
    #[error("variable {0} is bound to more than one edge")]
    DuplicateEdgeVar(Var),
    #[error(transparent)]
    Binding(#[from] BindingError),
}

/// One potential edge, present in the graph iff `var` is true.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub var: Var,
    /// Length for shortest paths, capacity for flows, cost for spanning trees.
    pub weight: u64,
}

/// A fixed node set with symbolic edges. Parallel edges are allowed.
#[derive(Clone, Debug)]
pub struct SymbolicGraph {
    id: u32,
    directed: bool,
    num_nodes: usize,
    edges: Vec<EdgeSpec>,
    // Outgoing (directed) or incident (undirected) edges, sorted by
    // (neighbour, edge id) so traversals visit lower node ids first.
    adj: Vec<Vec<usize>>,
    // Incoming edges of directed graphs, same ordering.
    radj: Vec<Vec<usize>>,
    // Edge ids sorted by (weight, id): the strict order used for spanning trees.
    weight_order: Vec<usize>,
}

impl SymbolicGraph {
    pub fn new(id: u32, directed: bool, num_nodes: usize) -> SymbolicGraph {
        SymbolicGraph {
            id,
            directed,
            num_nodes,
            edges: Vec::new(),
            adj: vec![Vec::new(); num_nodes],
            radj: vec![Vec::new(); num_nodes],
            weight_order: Vec::new(),
        }
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeSpec] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &EdgeSpec {
        &self.edges[id]
    }

    pub fn check_node(&self, node: usize) -> Result<(), GraphError> {
        if node < self.num_nodes {
            Ok(())
        } else {
            Err(GraphError::NodeOutOfRange {
                node,
                nodes: self.num_nodes,
            })
        }
    }

    pub fn add_edge(
        &mut self,
        u: usize,
        v: usize,
        var: Var,
        weight: u64,
    ) -> Result<usize, GraphError> {
        self.check_node(u)?;
        self.check_node(v)?;
        if self.edges.iter().any(|e| e.var == var) {
            return Err(GraphError::DuplicateEdgeVar(var));
        }
        let id = self.edges.len();
        self.edges.push(EdgeSpec {
            id,
            u,
            v,
            var,
            weight,
        });
        self.insert_adj(u, id, v, false);
        if self.directed {
            self.insert_adj(v, id, u, true);
        } else if u != v {
            self.insert_adj(v, id, u, false);
        }
        let pos = self
            .weight_order
            .partition_point(|&e| (self.edges[e].weight, e) < (weight, id));
        self.weight_order.insert(pos, id);
        Ok(id)
    }

    fn insert_adj(&mut self, node: usize, edge: usize, neighbour: usize, reverse: bool) {
        let edges = &self.edges;
        let directed = self.directed;
        let list = if reverse {
            &mut self.radj[node]
        } else {
            &mut self.adj[node]
        };
        let key = |e: usize| {
            let spec = &edges[e];
            let n = if reverse || (!directed && spec.v == node) {
                spec.u
            } else {
                spec.v
            };
            (n, e)
        };
        let pos = list.partition_point(|&e| key(e) < (neighbour, edge));
        list.insert(pos, edge);
    }

    /// Outgoing edges (directed) or incident edges (undirected) of `node`.
    pub fn out_edges(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    /// Incoming edges of `node` in a directed graph.
    pub fn in_edges(&self, node: usize) -> &[usize] {
        &self.radj[node]
    }

    /// The endpoint of `edge` reached when leaving `node` along it.
    #[inline]
    pub fn head_from(&self, edge: usize, node: usize) -> usize {
        let e = &self.edges[edge];
        if e.u == node {
            e.v
        } else {
            e.u
        }
    }

    /// Edge ids in increasing (weight, id) order.
    pub fn weight_order(&self) -> &[usize] {
        &self.weight_order
    }

    /// Strict total order on edges used to make spanning trees unique.
    #[inline]
    pub fn heavier(&self, a: usize, b: usize) -> bool {
        (self.edges[a].weight, a) > (self.edges[b].weight, b)
    }
}
