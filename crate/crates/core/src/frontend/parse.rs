use std::collections::{HashMap, HashSet};
use std::str::FromStr;

use thiserror::Error;

use super::doc::{EdgeDecl, GnfDocument, GraphDecl, PredicateDecl, ProcessorDecl, TaskDecl};
use crate::graph::{GraphPredicate, MstBound};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
        found: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Semantic { line, .. } => *line,
        }
    }
}

struct Line<'a> {
    no: usize,
    tokens: Vec<(usize, &'a str)>,
    pos: usize,
    end_column: usize,
}

impl<'a> Line<'a> {
    fn new(no: usize, text: &'a str) -> Line<'a> {
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    tokens.push((s + 1, &text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            tokens.push((s + 1, &text[s..]));
        }
        Line {
            no,
            tokens,
            pos: 0,
            end_column: text.len() + 1,
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        let (column, found) = match self.tokens.get(self.pos) {
            Some(&(c, t)) => (c, format!("`{t}`")),
            None => (self.end_column, "end of line".to_string()),
        };
        ParseError::Syntax {
            line: self.no,
            column,
            expected: expected.to_string(),
            found,
        }
    }

    fn semantic(&self, message: impl Into<String>) -> ParseError {
        ParseError::Semantic {
            line: self.no,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&'a str> {
        self.tokens.get(self.pos).map(|t| t.1)
    }

    fn num<T: FromStr>(&mut self, expected: &str) -> Result<T, ParseError> {
        match self.peek().and_then(|t| t.parse().ok()) {
            Some(v) => {
                self.pos += 1;
                Ok(v)
            }
            None => Err(self.error(expected)),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.tokens.len() {
            Err(self.error("end of line"))
        } else {
            Ok(())
        }
    }
}

struct Parser {
    doc: GnfDocument,
    header_line: usize,
    declared_clauses: usize,
    declared_edges: Vec<(usize, usize)>,
    pending: Vec<i32>,
    pred_lines: HashMap<u32, usize>,
}

impl Parser {
    fn var(&self, line: &mut Line<'_>) -> Result<u32, ParseError> {
        let v: u32 = line.num("variable")?;
        if v == 0 || v > self.doc.num_vars {
            line.pos -= 1;
            return Err(line.semantic(format!("variable {v} outside 1..={}", self.doc.num_vars)));
        }
        Ok(v)
    }

    fn graph_index(&self, line: &mut Line<'_>) -> Result<usize, ParseError> {
        let gid: u32 = line.num("graph id")?;
        self.doc
            .graphs
            .iter()
            .position(|g| g.id == gid)
            .ok_or_else(|| line.semantic(format!("graph {gid} is not declared")))
    }

    fn node(&self, line: &mut Line<'_>, g: usize) -> Result<usize, ParseError> {
        let n: usize = line.num("node id")?;
        let nodes = self.doc.graphs[g].nodes;
        if n >= nodes {
            return Err(line.semantic(format!(
                "node {n} out of range for graph {} with {nodes} nodes",
                self.doc.graphs[g].id
            )));
        }
        Ok(n)
    }

    fn processor_index(&self, line: &mut Line<'_>) -> Result<usize, ParseError> {
        let pid: u32 = line.num("processor id")?;
        self.doc
            .processors
            .iter()
            .position(|p| p.id == pid)
            .ok_or_else(|| line.semantic(format!("processor {pid} is not declared")))
    }

    fn predicate(
        &mut self,
        line: &mut Line<'_>,
        g: usize,
        pred: GraphPredicate,
    ) -> Result<(), ParseError> {
        let graph = &self.doc.graphs[g];
        if pred.requires_directed() != graph.directed {
            let want = if pred.requires_directed() {
                "digraph"
            } else {
                "ugraph"
            };
            return Err(line.semantic(format!(
                "{} requires a {want}, graph {} is not one",
                pred.name(),
                graph.id
            )));
        }
        let var = self.var(line)?;
        line.finish()?;
        self.bind_predicate(line, var)?;
        self.doc.graphs[g]
            .predicates
            .push(PredicateDecl { pred, var });
        Ok(())
    }

    fn bind_predicate(&mut self, line: &Line<'_>, var: u32) -> Result<(), ParseError> {
        if let Some(prev) = self.pred_lines.insert(var, line.no) {
            return Err(line.semantic(format!(
                "variable {var} already bound to a predicate on line {prev}"
            )));
        }
        Ok(())
    }

    fn statement(&mut self, mut line: Line<'_>) -> Result<(), ParseError> {
        let head = line.peek().unwrap();
        if head.starts_with(|c: char| c == '-' || c.is_ascii_digit()) {
            return self.clause_tokens(line);
        }
        if !self.pending.is_empty() {
            return Err(line.error("continuation of the unterminated clause"));
        }
        line.pos += 1;
        match head {
            "digraph" | "ugraph" => {
                let nodes: usize = line.num("node count")?;
                let edges: usize = line.num("edge count")?;
                let id: u32 = line.num("graph id")?;
                line.finish()?;
                if self.doc.graph(id).is_some() {
                    return Err(line.semantic(format!("duplicate graph id {id}")));
                }
                self.doc.graphs.push(GraphDecl {
                    id,
                    directed: head == "digraph",
                    nodes,
                    edges: Vec::new(),
                    predicates: Vec::new(),
                });
                self.declared_edges.push((edges, line.no));
            }
            "edge" => {
                let g = self.graph_index(&mut line)?;
                let u = self.node(&mut line, g)?;
                let v = self.node(&mut line, g)?;
                let var = self.var(&mut line)?;
                let weight = if line.peek().is_some() {
                    line.num("weight")?
                } else {
                    1
                };
                line.finish()?;
                let graph = &mut self.doc.graphs[g];
                if graph.edges.iter().any(|e| e.var == var) {
                    return Err(line.semantic(format!(
                        "variable {var} bound to two edges of graph {}",
                        graph.id
                    )));
                }
                if graph.edges.len() == self.declared_edges[g].0 {
                    return Err(line.semantic(format!(
                        "graph {} declares {} edges",
                        graph.id, self.declared_edges[g].0
                    )));
                }
                graph.edges.push(EdgeDecl { u, v, var, weight });
            }
            "reach" => {
                let g = self.graph_index(&mut line)?;
                let from = self.node(&mut line, g)?;
                let to = self.node(&mut line, g)?;
                self.predicate(&mut line, g, GraphPredicate::Reach { from, to })?;
            }
            "distance_leq" => {
                let g = self.graph_index(&mut line)?;
                let from = self.node(&mut line, g)?;
                let to = self.node(&mut line, g)?;
                let bound = line.num("distance bound")?;
                self.predicate(
                    &mut line,
                    g,
                    GraphPredicate::DistanceLeq { from, to, bound },
                )?;
            }
            "maxflow_geq" => {
                let g = self.graph_index(&mut line)?;
                let source = self.node(&mut line, g)?;
                let sink = self.node(&mut line, g)?;
                let bound = line.num("flow bound")?;
                self.predicate(
                    &mut line,
                    g,
                    GraphPredicate::MaxFlowGeq {
                        source,
                        sink,
                        bound,
                    },
                )?;
            }
            "components_leq" => {
                let g = self.graph_index(&mut line)?;
                let bound = line.num("component bound")?;
                self.predicate(&mut line, g, GraphPredicate::ComponentsLeq { bound })?;
            }
            "mst_weight_leq" => {
                let g = self.graph_index(&mut line)?;
                let bound = if line.peek() == Some("inf") {
                    line.pos += 1;
                    MstBound::Infinite
                } else {
                    MstBound::Finite(line.num("weight bound or `inf`")?)
                };
                self.predicate(&mut line, g, GraphPredicate::MstWeightLeq { bound })?;
            }
            "mst_edge" => {
                let g = self.graph_index(&mut line)?;
                let evar = self.var(&mut line)?;
                let Some(edge) = self.doc.graphs[g].edges.iter().position(|e| e.var == evar) else {
                    line.pos -= 1;
                    return Err(line.semantic(format!(
                        "variable {evar} is not an edge of graph {}",
                        self.doc.graphs[g].id
                    )));
                };
                self.predicate(&mut line, g, GraphPredicate::MstEdge { edge })?;
            }
            "processor" => {
                let id: u32 = line.num("processor id")?;
                line.finish()?;
                if self.doc.processor(id).is_some() {
                    return Err(line.semantic(format!("duplicate processor id {id}")));
                }
                self.doc.processors.push(ProcessorDecl {
                    id,
                    tasks: Vec::new(),
                    schedulable: Vec::new(),
                });
            }
            "task" => {
                let p = self.processor_index(&mut line)?;
                let arrival = line.num("arrival time")?;
                let length: u64 = line.num("task length")?;
                let deadline = line.num("deadline")?;
                let var = self.var(&mut line)?;
                line.finish()?;
                if length == 0 {
                    return Err(line.semantic("task length must be positive"));
                }
                self.doc.processors[p].tasks.push(TaskDecl {
                    arrival,
                    length,
                    deadline,
                    var,
                });
            }
            "schedulable" => {
                let p = self.processor_index(&mut line)?;
                let var = self.var(&mut line)?;
                line.finish()?;
                self.bind_predicate(&line, var)?;
                self.doc.processors[p].schedulable.push(var);
            }
            "p" => return Err(line.semantic("duplicate header")),
            _ => {
                line.pos -= 1;
                return Err(line.error("a statement keyword or clause literal"));
            }
        }
        Ok(())
    }

    fn clause_tokens(&mut self, mut line: Line<'_>) -> Result<(), ParseError> {
        while line.peek().is_some() {
            let lit: i32 = line.num("literal")?;
            if lit == 0 {
                self.doc.clauses.push(std::mem::take(&mut self.pending));
            } else {
                if lit.unsigned_abs() > self.doc.num_vars {
                    line.pos -= 1;
                    return Err(
                        line.semantic(format!("literal {lit} outside 1..={}", self.doc.num_vars))
                    );
                }
                self.pending.push(lit);
            }
        }
        Ok(())
    }
}

/// Parses a GNF document. Comments are kept in order.
pub fn parse(text: &str) -> Result<GnfDocument, ParseError> {
    let mut parser: Option<Parser> = None;
    let mut comments = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        last_line = no;
        let trimmed = raw.trim_start();
        if trimmed == "c" || trimmed.starts_with("c ") || trimmed.starts_with("c\t") {
            let body = &trimmed[1..];
            comments.push(
                body.strip_prefix(' ')
                    .unwrap_or(body)
                    .trim_end()
                    .to_string(),
            );
            continue;
        }
        let mut line = Line::new(no, raw);
        if line.peek().is_none() {
            continue;
        }
        match parser.as_mut() {
            None => {
                if line.peek() != Some("p") {
                    return Err(line.error("`p gnf <vars> <clauses>` header"));
                }
                line.pos += 1;
                if line.peek() != Some("gnf") {
                    return Err(line.error("`gnf`"));
                }
                line.pos += 1;
                let num_vars = line.num("variable count")?;
                let declared_clauses = line.num("clause count")?;
                line.finish()?;
                parser = Some(Parser {
                    doc: GnfDocument::new(num_vars),
                    header_line: no,
                    declared_clauses,
                    declared_edges: Vec::new(),
                    pending: Vec::new(),
                    pred_lines: HashMap::new(),
                });
            }
            Some(p) => p.statement(line)?,
        }
    }
    let Some(mut p) = parser else {
        return Err(ParseError::Syntax {
            line: last_line.max(1),
            column: 1,
            expected: "`p gnf <vars> <clauses>` header".into(),
            found: "end of input".into(),
        });
    };
    if !p.pending.is_empty() {
        return Err(ParseError::Semantic {
            line: last_line,
            message: "last clause is not terminated by 0".into(),
        });
    }
    if p.doc.clauses.len() != p.declared_clauses {
        return Err(ParseError::Semantic {
            line: p.header_line,
            message: format!(
                "header declares {} clauses, found {}",
                p.declared_clauses,
                p.doc.clauses.len()
            ),
        });
    }
    for (g, &(n, line)) in p.doc.graphs.iter().zip(&p.declared_edges) {
        if g.edges.len() != n {
            return Err(ParseError::Semantic {
                line,
                message: format!("graph {} declares {n} edges, found {}", g.id, g.edges.len()),
            });
        }
    }
    let arg_set: HashSet<u32> = p
        .doc
        .graphs
        .iter()
        .flat_map(|g| g.edges.iter().map(|e| e.var))
        .chain(
            p.doc
                .processors
                .iter()
                .flat_map(|q| q.tasks.iter().map(|t| t.var)),
        )
        .collect();
    let mut clash: Vec<(usize, u32)> = p
        .pred_lines
        .iter()
        .filter(|(v, _)| arg_set.contains(v))
        .map(|(&v, &l)| (l, v))
        .collect();
    clash.sort_unstable();
    if let Some(&(line, v)) = clash.first() {
        return Err(ParseError::Semantic {
            line,
            message: format!("predicate variable {v} is also an edge or task variable"),
        });
    }
    p.doc.comments = comments;
    Ok(p.doc)
}
