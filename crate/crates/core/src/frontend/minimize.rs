use thiserror::Error;

use super::doc::GnfDocument;
use super::{run_solve, BuildError, SolveOptions};
use crate::graph::{GraphPredicate, MstBound};

#[derive(Debug, Error)]
pub enum MinimizeError {
    #[error("variable {0} is not an mst_weight_leq or distance_leq atom")]
    NotABoundAtom(u32),
    #[error("feasibility is not monotone in the bound: SAT at {sat} but UNSAT at {unsat}")]
    NotMonotone { sat: u64, unsat: u64 },
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimizeOutcome {
    /// The smallest satisfiable bound and a model for it.
    Optimal { bound: u64, model: Vec<bool> },
    /// Unsatisfiable even at the largest bound tried.
    Infeasible { upper: u64 },
}

struct Target {
    graph: usize,
    pred: usize,
    upper: u64,
}

fn locate(doc: &GnfDocument, var: u32) -> Option<Target> {
    for (gi, g) in doc.graphs.iter().enumerate() {
        if let Some(pi) = g.predicates.iter().position(|p| p.var == var) {
            let upper = g.edges.iter().map(|e| e.weight).sum();
            return match g.predicates[pi].pred {
                GraphPredicate::MstWeightLeq { .. } | GraphPredicate::DistanceLeq { .. } => {
                    Some(Target {
                        graph: gi,
                        pred: pi,
                        upper,
                    })
                }
                _ => None,
            };
        }
    }
    None
}

fn with_bound(doc: &GnfDocument, t: &Target, var: u32, c: u64) -> GnfDocument {
    let mut d = doc.clone();
    let p = &mut d.graphs[t.graph].predicates[t.pred].pred;
    *p = match *p {
        GraphPredicate::MstWeightLeq { .. } => GraphPredicate::MstWeightLeq {
            bound: MstBound::Finite(c),
        },
        GraphPredicate::DistanceLeq { from, to, .. } => {
            GraphPredicate::DistanceLeq { from, to, bound: c }
        }
        other => other,
    };
    d.add_clause(vec![var as i32]);
    d
}

/// Finds the smallest bound `C` in `[0, total edge weight]` for which the
/// document is satisfiable with the bound atom asserted, by binary search.
/// Each probe is a fresh solve.
pub fn minimize_bound(
    doc: &GnfDocument,
    bound_atom: u32,
    opts: &SolveOptions,
) -> Result<MinimizeOutcome, MinimizeError> {
    let target = locate(doc, bound_atom).ok_or(MinimizeError::NotABoundAtom(bound_atom))?;
    let mut sat_at: Vec<u64> = Vec::new();
    let mut unsat_at: Vec<u64> = Vec::new();
    let mut probe = |c: u64| -> Result<Option<Vec<bool>>, MinimizeError> {
        let report = run_solve(&with_bound(doc, &target, bound_atom, c), opts)?;
        if report.is_sat() {
            if let Some(&u) = unsat_at.iter().find(|&&u| u >= c) {
                return Err(MinimizeError::NotMonotone { sat: c, unsat: u });
            }
            sat_at.push(c);
            Ok(Some(report.model))
        } else {
            if let Some(&s) = sat_at.iter().find(|&&s| s <= c) {
                return Err(MinimizeError::NotMonotone { sat: s, unsat: c });
            }
            unsat_at.push(c);
            Ok(None)
        }
    };
    let Some(mut best) = probe(target.upper)? else {
        return Ok(MinimizeOutcome::Infeasible {
            upper: target.upper,
        });
    };
    let (mut lo, mut hi) = (0, target.upper);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match probe(mid)? {
            Some(m) => {
                best = m;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    Ok(MinimizeOutcome::Optimal {
        bound: hi,
        model: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse;

    #[test]
    fn triangle_connectivity_costs_three() {
        let text = "p gnf 4 0\nugraph 3 3 0\nedge 0 0 1 1 1\nedge 0 1 2 2 2\nedge 0 0 2 3 3\nmst_weight_leq 0 inf 4\n";
        let doc = parse(text).unwrap();
        let out = minimize_bound(&doc, 4, &SolveOptions::default()).unwrap();
        let MinimizeOutcome::Optimal { bound, .. } = out else {
            panic!("expected a bound");
        };
        assert_eq!(bound, 3);
    }

    #[test]
    fn disconnected_is_infeasible() {
        let text = "p gnf 2 1\nugraph 3 1 0\nedge 0 0 1 1 5\nmst_weight_leq 0 inf 2\n2 0\n";
        let doc = parse(text).unwrap();
        assert_eq!(
            minimize_bound(&doc, 2, &SolveOptions::default()).unwrap(),
            MinimizeOutcome::Infeasible { upper: 5 }
        );
        assert!(matches!(
            minimize_bound(&doc, 1, &SolveOptions::default()),
            Err(MinimizeError::NotABoundAtom(1))
        ));
    }
}
