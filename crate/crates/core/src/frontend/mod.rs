//! The GNF file format, solver construction and output, the bound
//! minimization loop, cardinality constraints and instance generators.

mod cardinality;
mod doc;
pub mod gen;
mod minimize;
mod parse;
mod render;
mod rng;

pub use cardinality::{encode_cardinality, Relation};
pub use doc::{EdgeDecl, GnfDocument, GraphDecl, PredicateDecl, ProcessorDecl, TaskDecl};
pub use minimize::{minimize_bound, MinimizeError, MinimizeOutcome};
pub use parse::{parse, ParseError};
pub use render::{render_ascii, RenderError};
pub use rng::Rng;

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{self, graph_theory, GraphError, GraphPredicate, MstBound, SymbolicGraph};
use crate::sat::{
    AddClause, ClauseLog, SolveResult, Solver, SolverConfig, SolverError, Stats, Status,
};
use crate::sched::{edf_feasible, processor_theory, Feasibility, SchedError, TaskSpec};
use crate::{Lit, Var};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sched(#[from] SchedError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub witness: bool,
    pub theory_decisions: bool,
    pub seed: u64,
    /// Record learnt and theory clauses for later checking.
    pub log_clauses: bool,
}

impl Default for SolveOptions {
    fn default() -> SolveOptions {
        SolveOptions {
            witness: false,
            theory_decisions: true,
            seed: 0,
            log_clauses: false,
        }
    }
}

/// The theory graph for a declaration; variable `n` becomes `Var(n - 1)`.
pub fn symbolic_graph(g: &GraphDecl) -> SymbolicGraph {
    let mut sg = SymbolicGraph::new(g.id, g.directed, g.nodes);
    for e in &g.edges {
        sg.add_edge(e.u, e.v, Var::from_dimacs(e.var), e.weight)
            .expect("validated graph declaration");
    }
    sg
}

fn task_specs(p: &doc::ProcessorDecl) -> Vec<TaskSpec> {
    p.tasks
        .iter()
        .enumerate()
        .map(|(id, t)| TaskSpec {
            id,
            arrival: t.arrival,
            length: t.length,
            deadline: t.deadline,
            var: Var::from_dimacs(t.var),
        })
        .collect()
}

/// Builds a solver holding the document's clauses and one theory per graph
/// and per processor that carries predicate atoms.
pub fn build_solver(doc: &GnfDocument, opts: &SolveOptions) -> Result<Solver, BuildError> {
    doc.validate().map_err(BuildError::Invalid)?;
    let mut solver = Solver::new(SolverConfig {
        theory_decisions: opts.theory_decisions,
        seed: opts.seed,
        log_clauses: opts.log_clauses,
        ..SolverConfig::default()
    });
    for _ in 0..doc.num_vars {
        solver.new_var();
    }
    for g in doc.graphs.iter().filter(|g| !g.predicates.is_empty()) {
        let preds = g
            .predicates
            .iter()
            .map(|p| (p.pred, Var::from_dimacs(p.var)))
            .collect();
        solver.attach_theory(Box::new(graph_theory(symbolic_graph(g), preds)?))?;
    }
    for p in &doc.processors {
        for &v in &p.schedulable {
            solver.attach_theory(Box::new(processor_theory(
                p.id,
                task_specs(p),
                Var::from_dimacs(v),
            )?))?;
        }
    }
    for c in &doc.clauses {
        let lits: Vec<Lit> = c.iter().map(|&l| Lit::from_dimacs(l)).collect();
        if solver.add_clause(&lits)? == AddClause::ConflictAtRoot {
            break;
        }
    }
    Ok(solver)
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub status: Status,
    /// Values of variables 1..=n when satisfiable.
    pub model: Vec<bool>,
    pub witnesses: Vec<String>,
    pub stats: Stats,
    pub clause_log: ClauseLog,
}

impl SolveReport {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }

    /// The `s`, `v` and `w` lines of the solver output.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match self.status {
            Status::Sat => {
                out.push_str("s SATISFIABLE\n");
                out.push_str(&model_line(&self.model));
                out.push('\n');
                for w in &self.witnesses {
                    out.push_str(w);
                    out.push('\n');
                }
            }
            Status::Unsat => out.push_str("s UNSATISFIABLE\n"),
        }
        out
    }
}

/// `v 1 -2 3 ... 0`
pub fn model_line(model: &[bool]) -> String {
    let mut line = String::from("v");
    for (i, &b) in model.iter().enumerate() {
        let v = i as i64 + 1;
        let _ = write!(line, " {}", if b { v } else { -v });
    }
    line.push_str(" 0");
    line
}

/// Reads the values from `v` lines; other lines are ignored.
pub fn parse_model(text: &str, num_vars: u32) -> Result<Vec<bool>, String> {
    let mut model = vec![None; num_vars as usize];
    for line in text.lines().filter(|l| l.starts_with("v ") || *l == "v") {
        for tok in line.split_whitespace().skip(1) {
            let lit: i64 = tok.parse().map_err(|_| format!("bad literal `{tok}`"))?;
            if lit == 0 {
                continue;
            }
            let v = lit.unsigned_abs() as usize;
            if v > model.len() {
                return Err(format!("literal {lit} outside 1..={num_vars}"));
            }
            model[v - 1] = Some(lit > 0);
        }
    }
    model
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| format!("variable {} has no value", i + 1)))
        .collect()
}

pub fn run_solve(doc: &GnfDocument, opts: &SolveOptions) -> Result<SolveReport, BuildError> {
    let mut solver = build_solver(doc, opts)?;
    let result: SolveResult = solver.solve(&[]);
    let witnesses = if opts.witness && result.is_sat() {
        witness_lines(doc, &result.model)
    } else {
        Vec::new()
    };
    Ok(SolveReport {
        status: result.status,
        model: result.model,
        witnesses,
        stats: solver.stats(),
        clause_log: solver.clause_log().clone(),
    })
}

fn bound_text(b: MstBound) -> String {
    match b {
        MstBound::Finite(c) => c.to_string(),
        MstBound::Infinite => "inf".into(),
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn path_nodes(g: &SymbolicGraph, from: usize, path: &[usize]) -> Vec<usize> {
    let mut nodes = vec![from];
    for &e in path {
        let last = *nodes.last().unwrap();
        nodes.push(g.head_from(e, last));
    }
    nodes
}

/// One `w` line per predicate atom that is true in `model`.
pub fn witness_lines(doc: &GnfDocument, model: &[bool]) -> Vec<String> {
    let val = |v: u32| model[v as usize - 1];
    let mut lines = Vec::new();
    for gd in &doc.graphs {
        if gd.predicates.is_empty() {
            continue;
        }
        let g = symbolic_graph(gd);
        let on: Vec<bool> = gd.edges.iter().map(|e| val(e.var)).collect();
        let gid = gd.id;
        for p in gd.predicates.iter().filter(|p| val(p.var)) {
            let line = match p.pred {
                GraphPredicate::Reach { from, to } => {
                    let path = graph::bfs(&g, &on, from, Some(to))
                        .path_to(&g, to)
                        .unwrap_or_default();
                    format!(
                        "w reach {gid} {from} {to} : {}",
                        join(path_nodes(&g, from, &path))
                    )
                }
                GraphPredicate::DistanceLeq { from, to, bound } => {
                    let tree = graph::dijkstra(&g, &on, from, Some(to), u64::MAX);
                    let path = tree.path_to(&g, to).unwrap_or_default();
                    format!(
                        "w distance_leq {gid} {from} {to} {bound} : {} length {}",
                        join(path_nodes(&g, from, &path)),
                        tree.dist[to]
                    )
                }
                GraphPredicate::MaxFlowGeq {
                    source,
                    sink,
                    bound,
                } => {
                    let r = graph::max_flow(&g, &on, source, sink, None);
                    let flows = (0..gd.edges.len())
                        .filter(|&e| r.flow[e] > 0)
                        .map(|e| format!("{}:{}", gd.edges[e].var, r.flow[e]));
                    let value = if source == sink {
                        "inf".to_string()
                    } else {
                        r.value.to_string()
                    };
                    format!(
                        "w maxflow_geq {gid} {source} {sink} {bound} : value {value} flow {}",
                        join(flows)
                    )
                }
                GraphPredicate::ComponentsLeq { bound } => {
                    format!(
                        "w components_leq {gid} {bound} : count {}",
                        graph::components(&g, &on).count
                    )
                }
                GraphPredicate::MstWeightLeq { bound } => {
                    let f = graph::kruskal(&g, &on);
                    format!(
                        "w mst_weight_leq {gid} {} : weight {} edges {}",
                        bound_text(bound),
                        f.weight,
                        join(f.tree_edges.iter().map(|&e| gd.edges[e].var))
                    )
                }
                GraphPredicate::MstEdge { edge } => {
                    let why = if on[edge] { "in_tree" } else { "disabled" };
                    format!("w mst_edge {gid} {} : {why}", gd.edges[edge].var)
                }
            };
            lines.push(line);
        }
    }
    for p in &doc.processors {
        for &v in p.schedulable.iter().filter(|&&v| val(v)) {
            let specs = task_specs(p);
            let enabled: Vec<TaskSpec> = specs
                .into_iter()
                .filter(|t| val(t.var.to_dimacs()))
                .collect();
            let report = edf_feasible(&enabled);
            debug_assert_eq!(report.feasibility, Feasibility::Feasible);
            let mut parts = Vec::new();
            for t in &enabled {
                let slices = report
                    .schedule
                    .iter()
                    .filter(|s| enabled[s.task].id == t.id)
                    .map(|s| format!("{}-{}", s.start, s.end));
                parts.push(format!("({} {})", t.var.to_dimacs(), join(slices)));
            }
            lines.push(format!("w schedulable {} {v} : {}", p.id, parts.join(" ")));
        }
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_witness() {
        let doc = parse("p gnf 4 1\ndigraph 3 3 0\nedge 0 0 1 1\nedge 0 1 2 2\nedge 0 0 2 3\nreach 0 0 2 4\n4 0\n").unwrap();
        let report = run_solve(
            &doc,
            &SolveOptions {
                witness: true,
                ..SolveOptions::default()
            },
        )
        .unwrap();
        assert!(report.is_sat());
        let text = report.render();
        assert!(text.starts_with("s SATISFIABLE\nv "));
        let model = parse_model(&text, 4).unwrap();
        assert_eq!(model, report.model);
        assert!(report.witnesses[0].starts_with("w reach 0 0 2 : 0"));
    }

    #[test]
    fn unsat_output() {
        let doc = parse("p gnf 1 2\n1 0\n-1 0\n").unwrap();
        let report = run_solve(&doc, &SolveOptions::default()).unwrap();
        assert_eq!(report.render(), "s UNSATISFIABLE\n");
    }
}
