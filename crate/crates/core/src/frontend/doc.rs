use std::collections::HashSet;
use std::fmt;

use crate::graph::{GraphPredicate, MstBound};

/// A potential edge; `var` is a 1-based variable number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDecl {
    pub u: usize,
    pub v: usize,
    pub var: u32,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateDecl {
    /// `MstEdge` refers to the edge by its index in the graph's edge list.
    pub pred: GraphPredicate,
    pub var: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDecl {
    pub id: u32,
    pub directed: bool,
    pub nodes: usize,
    pub edges: Vec<EdgeDecl>,
    pub predicates: Vec<PredicateDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskDecl {
    pub arrival: u64,
    pub length: u64,
    pub deadline: u64,
    pub var: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessorDecl {
    pub id: u32,
    pub tasks: Vec<TaskDecl>,
    pub schedulable: Vec<u32>,
}

/// A parsed or generated GNF instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GnfDocument {
    /// Comment lines without the leading `c`, printed before the header.
    pub comments: Vec<String>,
    pub num_vars: u32,
    /// Clauses as DIMACS literals.
    pub clauses: Vec<Vec<i32>>,
    pub graphs: Vec<GraphDecl>,
    pub processors: Vec<ProcessorDecl>,
}

impl GnfDocument {
    pub fn new(num_vars: u32) -> GnfDocument {
        GnfDocument {
            num_vars,
            ..GnfDocument::default()
        }
    }

    /// Allocates a fresh variable.
    pub fn new_var(&mut self) -> u32 {
        self.num_vars += 1;
        self.num_vars
    }

    pub fn add_clause(&mut self, lits: impl Into<Vec<i32>>) {
        self.clauses.push(lits.into());
    }

    pub fn graph(&self, id: u32) -> Option<&GraphDecl> {
        self.graphs.iter().find(|g| g.id == id)
    }

    pub fn processor(&self, id: u32) -> Option<&ProcessorDecl> {
        self.processors.iter().find(|p| p.id == id)
    }

    /// Variables bound to predicate atoms, graph and scheduling alike.
    pub fn predicate_vars(&self) -> Vec<u32> {
        let mut vars: Vec<u32> = self
            .graphs
            .iter()
            .flat_map(|g| g.predicates.iter().map(|p| p.var))
            .collect();
        vars.extend(
            self.processors
                .iter()
                .flat_map(|p| p.schedulable.iter().copied()),
        );
        vars
    }

    /// Variables that some theory reads as an argument.
    pub fn argument_vars(&self) -> Vec<u32> {
        let mut vars: Vec<u32> = self
            .graphs
            .iter()
            .filter(|g| !g.predicates.is_empty())
            .flat_map(|g| g.edges.iter().map(|e| e.var))
            .collect();
        vars.extend(
            self.processors
                .iter()
                .filter(|p| !p.schedulable.is_empty())
                .flat_map(|p| p.tasks.iter().map(|t| t.var)),
        );
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// Checks the cross-reference rules the parser enforces, for documents
    /// built in code.
    pub fn validate(&self) -> Result<(), String> {
        let in_range = |v: u32| v >= 1 && v <= self.num_vars;
        for (i, c) in self.clauses.iter().enumerate() {
            if let Some(&l) = c.iter().find(|&&l| l == 0 || !in_range(l.unsigned_abs())) {
                return Err(format!(
                    "clause {} has literal {l} outside 1..={}",
                    i + 1,
                    self.num_vars
                ));
            }
        }
        let mut gids = HashSet::new();
        for g in &self.graphs {
            if !gids.insert(g.id) {
                return Err(format!("duplicate graph id {}", g.id));
            }
            let mut evars = HashSet::new();
            for e in &g.edges {
                if e.u >= g.nodes || e.v >= g.nodes {
                    return Err(format!(
                        "graph {}: edge {}-{} outside {} nodes",
                        g.id, e.u, e.v, g.nodes
                    ));
                }
                if !in_range(e.var) {
                    return Err(format!(
                        "graph {}: edge variable {} out of range",
                        g.id, e.var
                    ));
                }
                if !evars.insert(e.var) {
                    return Err(format!(
                        "graph {}: variable {} bound to two edges",
                        g.id, e.var
                    ));
                }
            }
            for p in &g.predicates {
                if !in_range(p.var) {
                    return Err(format!(
                        "graph {}: predicate variable {} out of range",
                        g.id, p.var
                    ));
                }
                if p.pred.requires_directed() != g.directed {
                    return Err(format!(
                        "{} on graph {}: wrong directedness",
                        p.pred.name(),
                        g.id
                    ));
                }
                let nodes: &[usize] = match &p.pred {
                    GraphPredicate::Reach { from, to }
                    | GraphPredicate::DistanceLeq { from, to, .. } => &[*from, *to],
                    GraphPredicate::MaxFlowGeq { source, sink, .. } => &[*source, *sink],
                    GraphPredicate::MstEdge { edge } if *edge >= g.edges.len() => {
                        return Err(format!("mst_edge on graph {}: unknown edge {edge}", g.id))
                    }
                    _ => &[],
                };
                if let Some(n) = nodes.iter().find(|&&n| n >= g.nodes) {
                    return Err(format!(
                        "{} on graph {}: node {n} out of range",
                        p.pred.name(),
                        g.id
                    ));
                }
            }
        }
        let mut pids = HashSet::new();
        for p in &self.processors {
            if !pids.insert(p.id) {
                return Err(format!("duplicate processor id {}", p.id));
            }
            for t in &p.tasks {
                if !in_range(t.var) {
                    return Err(format!(
                        "processor {}: task variable {} out of range",
                        p.id, t.var
                    ));
                }
                if t.length == 0 {
                    return Err(format!("processor {}: task with zero length", p.id));
                }
            }
            if let Some(v) = p.schedulable.iter().find(|&&v| !in_range(v)) {
                return Err(format!(
                    "processor {}: schedulable variable {v} out of range",
                    p.id
                ));
            }
        }
        let args: HashSet<u32> = self
            .graphs
            .iter()
            .flat_map(|g| g.edges.iter().map(|e| e.var))
            .chain(
                self.processors
                    .iter()
                    .flat_map(|p| p.tasks.iter().map(|t| t.var)),
            )
            .collect();
        let mut seen = HashSet::new();
        for v in self.predicate_vars() {
            if !seen.insert(v) {
                return Err(format!("variable {v} bound to two predicates"));
            }
            if args.contains(&v) {
                return Err(format!(
                    "predicate variable {v} is also an edge or task variable"
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GnfDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.comments {
            if c.is_empty() {
                writeln!(f, "c")?;
            } else {
                writeln!(f, "c {c}")?;
            }
        }
        writeln!(f, "p gnf {} {}", self.num_vars, self.clauses.len())?;
        for g in &self.graphs {
            let kind = if g.directed { "digraph" } else { "ugraph" };
            writeln!(f, "{kind} {} {} {}", g.nodes, g.edges.len(), g.id)?;
            for e in &g.edges {
                writeln!(f, "edge {} {} {} {} {}", g.id, e.u, e.v, e.var, e.weight)?;
            }
            for p in &g.predicates {
                let gid = g.id;
                let var = p.var;
                match p.pred {
                    GraphPredicate::Reach { from, to } => {
                        writeln!(f, "reach {gid} {from} {to} {var}")?
                    }
                    GraphPredicate::DistanceLeq { from, to, bound } => {
                        writeln!(f, "distance_leq {gid} {from} {to} {bound} {var}")?
                    }
                    GraphPredicate::MaxFlowGeq {
                        source,
                        sink,
                        bound,
                    } => writeln!(f, "maxflow_geq {gid} {source} {sink} {bound} {var}")?,
                    GraphPredicate::ComponentsLeq { bound } => {
                        writeln!(f, "components_leq {gid} {bound} {var}")?
                    }
                    GraphPredicate::MstWeightLeq { bound } => match bound {
                        MstBound::Finite(c) => writeln!(f, "mst_weight_leq {gid} {c} {var}")?,
                        MstBound::Infinite => writeln!(f, "mst_weight_leq {gid} inf {var}")?,
                    },
                    GraphPredicate::MstEdge { edge } => {
                        writeln!(f, "mst_edge {gid} {} {var}", g.edges[edge].var)?
                    }
                }
            }
        }
        for p in &self.processors {
            writeln!(f, "processor {}", p.id)?;
            for t in &p.tasks {
                writeln!(
                    f,
                    "task {} {} {} {} {}",
                    p.id, t.arrival, t.length, t.deadline, t.var
                )?;
            }
            for v in &p.schedulable {
                writeln!(f, "schedulable {} {v}", p.id)?;
            }
        }
        for c in &self.clauses {
            for l in c {
                write!(f, "{l} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}
