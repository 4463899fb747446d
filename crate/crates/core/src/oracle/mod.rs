//! Exhaustive ground truth for small instances: brute-force solving, model
//! checking and clause validity, all computed with the reference
//! evaluators in [`eval`] rather than the theory solvers.

pub mod eval;
pub mod random;

use std::collections::HashSet;

use thiserror::Error;

use crate::frontend::GnfDocument;

/// Largest number of variables the oracle will enumerate over.
pub const VAR_BUDGET: usize = 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {0} variables to enumerate, more than the budget of {VAR_BUDGET}")]
    BudgetExceeded(usize),
    #[error("model has {got} values, instance has {expected} variables")]
    IncompleteModel { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleResult {
    /// Values of variables 1..=n, in order.
    Sat(Vec<bool>),
    Unsat,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("clause {index} ({clause:?}) is falsified")]
    Clause { index: usize, clause: Vec<i32> },
    #[error("{kind} atom x{var} is {assigned} but the predicate evaluates to {actual}")]
    Atom {
        var: u32,
        kind: &'static str,
        assigned: bool,
        actual: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClauseCheck {
    Valid,
    /// A full assignment satisfying the required semantics that falsifies
    /// the clause.
    Counterexample(Vec<bool>),
}

#[inline]
fn lit_true(model: &[bool], lit: i32) -> bool {
    model[lit.unsigned_abs() as usize - 1] == (lit > 0)
}

/// Evaluates every predicate atom of `doc` on the argument values in
/// `model`, writing the results into the atom variables. `check` instead
/// compares against the values already there.
fn theory_atoms(doc: &GnfDocument, model: &mut [bool], check: bool) -> Result<(), Violation> {
    for g in &doc.graphs {
        if g.predicates.is_empty() {
            continue;
        }
        let enabled: Vec<bool> = g.edges.iter().map(|e| model[e.var as usize - 1]).collect();
        for p in &g.predicates {
            let actual = eval::graph_predicate_holds(g, &p.pred, &enabled);
            let slot = &mut model[p.var as usize - 1];
            if check && *slot != actual {
                return Err(Violation::Atom {
                    var: p.var,
                    kind: p.pred.name(),
                    assigned: *slot,
                    actual,
                });
            }
            *slot = actual;
        }
    }
    for proc in &doc.processors {
        if proc.schedulable.is_empty() {
            continue;
        }
        let enabled: Vec<_> = proc
            .tasks
            .iter()
            .filter(|t| model[t.var as usize - 1])
            .collect();
        let actual = eval::demand_feasible(&enabled);
        for &v in &proc.schedulable {
            let slot = &mut model[v as usize - 1];
            if check && *slot != actual {
                return Err(Violation::Atom {
                    var: v,
                    kind: "schedulable",
                    assigned: *slot,
                    actual,
                });
            }
            *slot = actual;
        }
    }
    Ok(())
}

fn first_false_clause(doc: &GnfDocument, model: &[bool]) -> Option<usize> {
    doc.clauses
        .iter()
        .position(|c| !c.iter().any(|&l| lit_true(model, l)))
}

/// Enumerates assignments to `free` in lexicographic order (first variable
/// most significant, false before true) on top of `base`, filling predicate
/// atoms from their arguments, and returns the first accepted one.
fn enumerate(
    doc: &GnfDocument,
    base: &[bool],
    free: &[u32],
    mut accept: impl FnMut(&[bool]) -> bool,
) -> Result<Option<Vec<bool>>, OracleError> {
    if free.len() > VAR_BUDGET {
        return Err(OracleError::BudgetExceeded(free.len()));
    }
    let mut model = base.to_vec();
    let k = free.len();
    for bits in 0u64..(1u64 << k) {
        for (j, &v) in free.iter().enumerate() {
            model[v as usize - 1] = bits >> (k - 1 - j) & 1 == 1;
        }
        theory_atoms(doc, &mut model, false).expect("filling atoms cannot fail");
        if accept(&model) {
            return Ok(Some(model));
        }
    }
    Ok(None)
}

fn budget(doc: &GnfDocument) -> Result<(), OracleError> {
    if doc.num_vars as usize > VAR_BUDGET {
        Err(OracleError::BudgetExceeded(doc.num_vars as usize))
    } else {
        Ok(())
    }
}

/// Decides the instance by enumeration, returning the lexicographically
/// first model. Predicate atoms are not enumerated: their values follow
/// from their arguments.
pub fn brute_force_solve(doc: &GnfDocument) -> Result<OracleResult, OracleError> {
    budget(doc)?;
    let preds: HashSet<u32> = doc.predicate_vars().into_iter().collect();
    let free: Vec<u32> = (1..=doc.num_vars).filter(|v| !preds.contains(v)).collect();
    let base = vec![false; doc.num_vars as usize];
    Ok(
        match enumerate(doc, &base, &free, |m| first_false_clause(doc, m).is_none())? {
            Some(m) => OracleResult::Sat(m),
            None => OracleResult::Unsat,
        },
    )
}

/// Checks a complete model against every clause and every predicate atom.
pub fn check_model(
    doc: &GnfDocument,
    model: &[bool],
) -> Result<Result<(), Violation>, OracleError> {
    if model.len() != doc.num_vars as usize {
        return Err(OracleError::IncompleteModel {
            expected: doc.num_vars as usize,
            got: model.len(),
        });
    }
    if let Some(index) = first_false_clause(doc, model) {
        return Ok(Err(Violation::Clause {
            index,
            clause: doc.clauses[index].clone(),
        }));
    }
    let mut copy = model.to_vec();
    Ok(theory_atoms(doc, &mut copy, true))
}

fn falsifying_base(doc: &GnfDocument, clause: &[i32]) -> Option<(Vec<bool>, HashSet<u32>)> {
    let mut base = vec![false; doc.num_vars as usize];
    let mut fixed = HashSet::new();
    for &l in clause {
        let v = l.unsigned_abs();
        let want = l < 0;
        if !fixed.insert(v) && base[v as usize - 1] != want {
            return None;
        }
        base[v as usize - 1] = want;
    }
    Some((base, fixed))
}

/// Whether `clause` holds on every assignment consistent with the theory
/// semantics alone (the CNF is ignored). Only theory arguments not fixed
/// by the clause are enumerated.
pub fn check_clause_valid(doc: &GnfDocument, clause: &[i32]) -> Result<ClauseCheck, OracleError> {
    budget(doc)?;
    let Some((base, fixed)) = falsifying_base(doc, clause) else {
        return Ok(ClauseCheck::Valid);
    };
    let free: Vec<u32> = doc
        .argument_vars()
        .into_iter()
        .filter(|v| !fixed.contains(v))
        .collect();
    let found = enumerate(doc, &base, &free, |m| {
        clause.iter().all(|&l| !lit_true(m, l))
    })?;
    Ok(found.map_or(ClauseCheck::Valid, ClauseCheck::Counterexample))
}

/// Whether `clause` is implied by the CNF together with the theory
/// semantics, as every learnt clause must be.
pub fn check_clause_implied(doc: &GnfDocument, clause: &[i32]) -> Result<ClauseCheck, OracleError> {
    budget(doc)?;
    let Some((base, fixed)) = falsifying_base(doc, clause) else {
        return Ok(ClauseCheck::Valid);
    };
    let preds: HashSet<u32> = doc.predicate_vars().into_iter().collect();
    let free: Vec<u32> = (1..=doc.num_vars)
        .filter(|v| !preds.contains(v) && !fixed.contains(v))
        .collect();
    let found = enumerate(doc, &base, &free, |m| {
        clause.iter().all(|&l| !lit_true(m, l)) && first_false_clause(doc, m).is_none()
    })?;
    Ok(found.map_or(ClauseCheck::Valid, ClauseCheck::Counterexample))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse;

    #[test]
    fn empty_instance_is_sat() {
        let doc = parse("p gnf 0 0\n").unwrap();
        assert_eq!(brute_force_solve(&doc), Ok(OracleResult::Sat(vec![])));
    }

    #[test]
    fn forced_unreachable_is_unsat() {
        let doc = parse("p gnf 3 3\ndigraph 2 2 0\nedge 0 0 1 1\nedge 0 0 1 2\nreach 0 0 1 3\n-1 0\n-2 0\n3 0\n").unwrap();
        assert_eq!(brute_force_solve(&doc), Ok(OracleResult::Unsat));
    }

    #[test]
    fn model_checks() {
        let doc =
            parse("p gnf 3 1\ndigraph 3 2 0\nedge 0 0 1 1\nedge 0 1 2 2\nreach 0 0 2 3\n3 0\n")
                .unwrap();
        let OracleResult::Sat(m) = brute_force_solve(&doc).unwrap() else {
            panic!("expected SAT")
        };
        assert_eq!(m, vec![true, true, true]);
        assert_eq!(check_model(&doc, &m), Ok(Ok(())));
        assert!(matches!(
            check_model(&doc, &[true, false, true]),
            Ok(Err(Violation::Atom { var: 3, .. }))
        ));
        assert!(matches!(
            check_model(&doc, &[false, false, false]),
            Ok(Err(Violation::Clause { index: 0, .. }))
        ));
        assert!(check_model(&doc, &[true]).is_err());
    }

    #[test]
    fn clause_validity() {
        let doc =
            parse("p gnf 3 0\ndigraph 3 2 0\nedge 0 0 1 1\nedge 0 1 2 2\nreach 0 0 2 3\n").unwrap();
        assert_eq!(
            check_clause_valid(&doc, &[-1, -2, 3]),
            Ok(ClauseCheck::Valid)
        );
        assert!(matches!(
            check_clause_valid(&doc, &[-1, 3]),
            Ok(ClauseCheck::Counterexample(_))
        ));
        assert_eq!(check_clause_valid(&doc, &[1, -3]), Ok(ClauseCheck::Valid));
        assert_eq!(check_clause_valid(&doc, &[1, -1]), Ok(ClauseCheck::Valid));
    }

    #[test]
    fn budget_is_enforced() {
        let doc = parse("p gnf 23 0\n").unwrap();
        assert_eq!(
            brute_force_solve(&doc),
            Err(OracleError::BudgetExceeded(23))
        );
    }
}
