use monosmt::sat::{AddClause, Solver, SolverConfig};
use monosmt::{Lit, Var};
use proptest::prelude::*;

fn clause_strategy(vars: u32) -> impl Strategy<Value = Vec<(u32, bool)>> {
    prop::collection::vec((0..vars, any::<bool>()), 1..=3)
}

fn satisfiable(vars: u32, clauses: &[Vec<(u32, bool)>], fixed: &[(u32, bool)]) -> bool {
    (0u32..1 << vars).any(|bits| {
        let val = |v: u32| bits >> v & 1 == 1;
        fixed.iter().all(|&(v, b)| val(v) == b)
            && clauses.iter().all(|c| c.iter().any(|&(v, b)| val(v) == b))
    })
}

fn build(vars: u32, clauses: &[Vec<(u32, bool)>], config: SolverConfig) -> (Solver, bool) {
    let mut s = Solver::new(config);
    for _ in 0..vars {
        s.new_var();
    }
    let mut ok = true;
    for c in clauses {
        let lits: Vec<Lit> = c.iter().map(|&(v, b)| Lit::new(Var(v), b)).collect();
        ok &= s.add_clause(&lits).unwrap() == AddClause::Accepted;
    }
    (s, ok)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn random_3cnf_matches_enumeration(
        clauses in prop::collection::vec(clause_strategy(10), 0..50),
        seed in 0u64..4,
    ) {
        let (mut s, _) = build(10, &clauses, SolverConfig { seed, restart_base: 4, ..SolverConfig::default() });
        let r = s.solve(&[]);
        prop_assert_eq!(r.is_sat(), satisfiable(10, &clauses, &[]));
        if r.is_sat() {
            for c in &clauses {
                prop_assert!(c.iter().any(|&(v, b)| r.model[v as usize] == b));
            }
        }
    }

    #[test]
    fn repeated_solves_under_assumptions(
        clauses in prop::collection::vec(clause_strategy(8), 0..30),
        rounds in prop::collection::vec(prop::collection::vec((0u32..8, any::<bool>()), 0..4), 1..6),
    ) {
        let (mut s, _) = build(8, &clauses, SolverConfig::default());
        for assumptions in rounds {
            let lits: Vec<Lit> = assumptions.iter().map(|&(v, b)| Lit::new(Var(v), b)).collect();
            let r = s.solve(&lits);
            prop_assert_eq!(r.is_sat(), satisfiable(8, &clauses, &assumptions));
            if r.is_sat() {
                for &(v, b) in &assumptions {
                    prop_assert_eq!(r.model[v as usize], b);
                }
            }
        }
    }
}

#[test]
fn pigeonhole_four_into_three_is_unsat() {
    let var = |p: u32, h: u32| p * 3 + h;
    let mut clauses = Vec::new();
    for p in 0..4 {
        clauses.push((0..3).map(|h| (var(p, h), true)).collect::<Vec<_>>());
    }
    for h in 0..3 {
        for a in 0..4 {
            for b in a + 1..4 {
                clauses.push(vec![(var(a, h), false), (var(b, h), false)]);
            }
        }
    }
    let (mut s, _) = build(12, &clauses, SolverConfig::default());
    assert!(!s.solve(&[]).is_sat());
    assert!(s.stats().conflicts > 0);
}
