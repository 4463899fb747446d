use thiserror::Error;

use super::heap::VarHeap;
use super::trail::{Reason, Trail};
use crate::lit::{LBool, Lit, Var};
use crate::smt::{Propagation, Theory};

/// Tuning knobs and instrumentation switches for [`Solver`].
#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Ask attached theories for a branching literal before falling back to
    /// the activity heuristic.
    pub theory_decisions: bool,
    pub var_decay: f64,
    pub clause_decay: f64,
    /// Conflicts per unit of the Luby restart sequence.
    pub restart_base: u64,
    /// Non-zero seeds perturb initial variable activities.
    pub seed: u64,
    /// Explain every theory implication as soon as it is made and check
    /// that the clause is falsified apart from the implied literal.
    pub audit_reasons: bool,
    /// Record learnt clauses and theory clauses in [`Solver::clause_log`].
    pub log_clauses: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            theory_decisions: true,
            var_decay: 0.95,
            clause_decay: 0.999,
            restart_base: 100,
            seed: 0,
            audit_reasons: false,
            log_clauses: false,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("variable {0} was not registered with new_var")]
    UnknownVariable(Var),
    #[error("theories must be attached before the first call to solve")]
    AttachAfterSolve,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub status: Status,
    /// Total assignment indexed by variable; empty unless `Sat`.
    pub model: Vec<bool>,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }

    pub fn value(&self, var: Var) -> bool {
        self.model[var.index()]
    }

    pub fn lit_value(&self, lit: Lit) -> bool {
        self.model[lit.var().index()] == lit.is_positive()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AddClause {
    Accepted,
    ConflictAtRoot,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub decisions: u64,
    pub hint_decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub theory_conflicts: u64,
    pub theory_implications: u64,
    pub explanations: u64,
    pub restarts: u64,
}

/// Clauses recorded while [`SolverConfig::log_clauses`] is set.
#[derive(Clone, Debug, Default)]
pub struct ClauseLog {
    /// First-UIP clauses derived by conflict analysis.
    pub learnt: Vec<Vec<Lit>>,
    /// Theory explanations and theory conflict clauses.
    pub theory: Vec<Vec<Lit>>,
}

#[derive(Debug)]
struct ClauseData {
    lits: Vec<Lit>,
    learnt: bool,
    activity: f64,
    deleted: bool,
}

#[derive(Clone, Copy, Debug)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

enum TheoryOutcome {
    Quiet,
    Implied,
    Conflict(Vec<Lit>),
}

enum Decision {
    Lit(Lit),
    AssumptionFailed,
    Complete,
}

/// Conflict-driven clause-learning solver with lazy theory hooks.
pub struct Solver {
    config: SolverConfig,
    trail: Trail,
    clauses: Vec<ClauseData>,
    free_slots: Vec<u32>,
    learnts: Vec<u32>,
    num_original: usize,
    watches: Vec<Vec<Watcher>>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    cla_inc: f64,
    seen: Vec<bool>,
    theories: Vec<Box<dyn Theory>>,
    theory_cursor: Vec<usize>,
    interest: Vec<Vec<u32>>,
    lazy_reasons: Vec<Option<Vec<Lit>>>,
    ok: bool,
    started: bool,
    max_learnts: f64,
    stats: Stats,
    log: ClauseLog,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new(SolverConfig::default())
    }
}

impl Solver {
    pub fn new(config: SolverConfig) -> Solver {
        Solver {
            config,
            trail: Trail::default(),
            clauses: Vec::new(),
            free_slots: Vec::new(),
            learnts: Vec::new(),
            num_original: 0,
            watches: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            heap: VarHeap::default(),
            phase: Vec::new(),
            cla_inc: 1.0,
            seen: Vec::new(),
            theories: Vec::new(),
            theory_cursor: Vec::new(),
            interest: Vec::new(),
            lazy_reasons: Vec::new(),
            ok: true,
            started: false,
            max_learnts: 0.0,
            stats: Stats::default(),
            log: ClauseLog::default(),
        }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn new_var(&mut self) -> Var {
        let v = Var(self.trail.num_vars() as u32);
        self.trail.new_var();
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        let act = if self.config.seed != 0 {
            // splitmix64 of (seed, var); tiny magnitudes keep it a tie-break.
            let mut z = self
                .config
                .seed
                .wrapping_add((v.0 as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^= z >> 31;
            (z >> 11) as f64 / (1u64 << 53) as f64 * 1e-5
        } else {
            0.0
        };
        self.activity.push(act);
        self.phase.push(false);
        self.seen.push(false);
        self.interest.push(Vec::new());
        self.lazy_reasons.push(None);
        self.heap.grow(self.trail.num_vars());
        self.heap.insert(v.index(), &self.activity);
        v
    }

    pub fn num_vars(&self) -> usize {
        self.trail.num_vars()
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn clause_log(&self) -> &ClauseLog {
        &self.log
    }

    pub fn num_theories(&self) -> usize {
        self.theories.len()
    }

    fn check_var(&self, v: Var) -> Result<(), SolverError> {
        if v.index() < self.num_vars() {
            Ok(())
        } else {
            Err(SolverError::UnknownVariable(v))
        }
    }

    /// Adds a problem clause at decision level 0.
    pub fn add_clause(&mut self, lits: &[Lit]) -> Result<AddClause, SolverError> {
        for l in lits {
            self.check_var(l.var())?;
        }
        if !self.ok {
            return Ok(AddClause::ConflictAtRoot);
        }
        self.cancel_until(0);
        let mut ls = lits.to_vec();
        ls.sort();
        ls.dedup();
        if ls.windows(2).any(|w| w[0] == !w[1]) {
            return Ok(AddClause::Accepted);
        }
        if ls.iter().any(|&l| self.trail.value(l).is_true()) {
            return Ok(AddClause::Accepted);
        }
        ls.retain(|&l| !self.trail.value(l).is_false());
        match ls.len() {
            0 => {
                self.ok = false;
                Ok(AddClause::ConflictAtRoot)
            }
            1 => {
                self.trail.push(ls[0], Reason::Decision);
                if self.propagate().is_some() {
                    self.ok = false;
                    return Ok(AddClause::ConflictAtRoot);
                }
                Ok(AddClause::Accepted)
            }
            _ => {
                self.attach(ls, false);
                self.num_original += 1;
                Ok(AddClause::Accepted)
            }
        }
    }

    /// Registers a theory. Theories receive callbacks in attachment order.
    pub fn attach_theory(&mut self, theory: Box<dyn Theory>) -> Result<usize, SolverError> {
        if self.started {
            return Err(SolverError::AttachAfterSolve);
        }
        let vars = theory.watched_vars();
        for &v in &vars {
            self.check_var(v)?;
        }
        let id = self.theories.len();
        for v in vars {
            let list = &mut self.interest[v.index()];
            if !list.contains(&(id as u32)) {
                list.push(id as u32);
            }
        }
        self.theories.push(theory);
        self.theory_cursor.push(0);
        Ok(id)
    }

    /// Current value of a literal; meaningful at level 0 between solves.
    pub fn value(&self, lit: Lit) -> LBool {
        self.trail.value(lit)
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool) -> u32 {
        debug_assert!(lits.len() >= 2);
        let (a, b) = (lits[0], lits[1]);
        let data = ClauseData {
            lits,
            learnt,
            activity: 0.0,
            deleted: false,
        };
        let cref = match self.free_slots.pop() {
            Some(slot) => {
                self.clauses[slot as usize] = data;
                slot
            }
            None => {
                self.clauses.push(data);
                (self.clauses.len() - 1) as u32
            }
        };
        self.watches[a.code()].push(Watcher { cref, blocker: b });
        self.watches[b.code()].push(Watcher { cref, blocker: a });
        if learnt {
            self.learnts.push(cref);
        }
        cref
    }

    /// Unit propagation to fixpoint; returns a falsified clause on conflict.
    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() && conflict.is_none() {
            let p = self.trail.lits()[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let mut i = 0;
            let mut j = 0;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.trail.value(w.blocker).is_true() {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let c = &mut self.clauses[w.cref as usize];
                if c.lits[0] == false_lit {
                    c.lits.swap(0, 1);
                }
                debug_assert_eq!(c.lits[1], false_lit);
                let first = c.lits[0];
                let nw = Watcher {
                    cref: w.cref,
                    blocker: first,
                };
                if first != w.blocker && self.trail.value(first).is_true() {
                    ws[j] = nw;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.lits.len() {
                    if !self.trail.value(c.lits[k]).is_false() {
                        c.lits.swap(1, k);
                        self.watches[c.lits[1].code()].push(nw);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = nw;
                j += 1;
                if self.trail.value(first).is_false() {
                    conflict = Some(w.cref);
                    self.qhead = self.trail.len();
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.trail.push(first, Reason::Clause(w.cref));
                }
            }
            ws.truncate(j);
            self.watches[false_lit.code()] = ws;
        }
        conflict
    }

    fn cancel_until(&mut self, level: u32) {
        if self.trail.decision_level() <= level {
            return;
        }
        let Solver {
            trail,
            phase,
            heap,
            activity,
            lazy_reasons,
            ..
        } = self;
        trail.backtrack(level, |lit| {
            let v = lit.var().index();
            phase[v] = lit.is_positive();
            heap.insert(v, activity);
            lazy_reasons[v] = None;
        });
        self.qhead = self.trail.len();
        let len = self.trail.len();
        for (t, th) in self.theories.iter_mut().enumerate() {
            th.on_backjump(level);
            self.theory_cursor[t] = self.theory_cursor[t].min(len);
        }
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.increased(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for &l in &self.learnts {
                self.clauses[l as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn decay(&mut self) {
        self.var_inc /= self.config.var_decay;
        self.cla_inc /= self.config.clause_decay;
    }

    /// The reason of an implied variable as a clause whose first literal is
    /// the implied one. Theory reasons are materialized once and cached.
    fn reason_clause(&mut self, v: Var) -> Vec<Lit> {
        match self.trail.reason(v) {
            Reason::Clause(c) => {
                self.bump_clause(c);
                self.clauses[c as usize].lits.clone()
            }
            Reason::Theory { .. } => self.materialize(v),
            Reason::Decision => unreachable!("decision {} has no reason", v),
        }
    }

    fn materialize(&mut self, v: Var) -> Vec<Lit> {
        if let Some(c) = &self.lazy_reasons[v.index()] {
            return c.clone();
        }
        let Reason::Theory {
            theory,
            tag,
            prefix,
        } = self.trail.reason(v)
        else {
            unreachable!("{} has no theory reason", v)
        };
        let lit = Lit::new(v, self.trail.var_value(v).is_true());
        let mut clause =
            self.theories[theory as usize].explain(&self.trail.view(), lit, tag, prefix as usize);
        self.stats.explanations += 1;
        let at = clause
            .iter()
            .position(|&l| l == lit)
            .unwrap_or_else(|| panic!("theory explanation for {:?} omits it: {:?}", lit, clause));
        clause.swap(0, at);
        if self.config.audit_reasons || cfg!(debug_assertions) {
            let pos = self.trail.position(v);
            for &q in &clause[1..] {
                assert!(
                    self.trail.value(q).is_false() && self.trail.position(q.var()) < pos,
                    "explanation {:?} for {:?} is not falsified by the trail prefix",
                    clause,
                    lit
                );
            }
        }
        if self.config.log_clauses {
            self.log.theory.push(clause.clone());
        }
        self.lazy_reasons[v.index()] = Some(clause.clone());
        clause
    }

    /// First-UIP conflict analysis. Returns the learnt clause (asserting
    /// literal first) and the backjump level.
    fn analyze(&mut self, confl: u32) -> (Vec<Lit>, u32) {
        let dl = self.trail.decision_level();
        let mut out = vec![Lit::new(Var(0), true)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        self.bump_clause(confl);
        let mut reason = self.clauses[confl as usize].lits.clone();
        loop {
            for &q in &reason {
                if Some(q) == p {
                    continue;
                }
                let v = q.var();
                if !self.seen[v.index()] && self.trail.level(v) > 0 {
                    self.seen[v.index()] = true;
                    self.bump_var(v.index());
                    if self.trail.level(v) >= dl {
                        path += 1;
                    } else {
                        out.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail.lits()[idx].var().index()] {
                    break;
                }
            }
            let pl = self.trail.lits()[idx];
            self.seen[pl.var().index()] = false;
            p = Some(pl);
            path -= 1;
            if path == 0 {
                break;
            }
            reason = self.reason_clause(pl.var());
        }
        out[0] = !p.unwrap();

        // Drop literals whose reason is subsumed by the clause.
        let to_clear: Vec<Lit> = out[1..].to_vec();
        let mut kept = 1;
        for i in 1..out.len() {
            let q = out[i];
            if !self.redundant(q.var()) {
                out[kept] = q;
                kept += 1;
            }
        }
        out.truncate(kept);
        for q in to_clear {
            self.seen[q.var().index()] = false;
        }

        let bt = if out.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for i in 2..out.len() {
                if self.trail.level(out[i].var()) > self.trail.level(out[max_i].var()) {
                    max_i = i;
                }
            }
            out.swap(1, max_i);
            self.trail.level(out[1].var())
        };
        (out, bt)
    }

    fn redundant(&self, v: Var) -> bool {
        let lits: &[Lit] = match self.trail.reason(v) {
            Reason::Decision => return false,
            Reason::Clause(c) => &self.clauses[c as usize].lits,
            Reason::Theory { .. } => match &self.lazy_reasons[v.index()] {
                Some(c) => c,
                None => return false,
            },
        };
        lits[1..]
            .iter()
            .all(|q| self.seen[q.var().index()] || self.trail.level(q.var()) == 0)
    }

    fn learn(&mut self, learnt: Vec<Lit>) {
        if self.config.log_clauses {
            self.log.learnt.push(learnt.clone());
        }
        if learnt.len() == 1 {
            self.trail.push(learnt[0], Reason::Decision);
        } else {
            let first = learnt[0];
            let cref = self.attach(learnt, true);
            self.bump_clause(cref);
            self.trail.push(first, Reason::Clause(cref));
        }
    }

    /// Handles a clause falsified by the trail that a theory reported.
    /// Returns false when the conflict is at the root.
    fn handle_theory_conflict(&mut self, mut lits: Vec<Lit>) -> bool {
        self.stats.theory_conflicts += 1;
        lits.sort();
        lits.dedup();
        debug_assert!(
            lits.iter().all(|&l| self.trail.value(l).is_false()),
            "theory conflict clause {:?} is not falsified",
            lits
        );
        if lits.is_empty() {
            return false;
        }
        lits.sort_by_key(|l| std::cmp::Reverse(self.trail.level(l.var())));
        let max = self.trail.level(lits[0].var());
        if max == 0 {
            return false;
        }
        self.cancel_until(max);
        let at_max = lits
            .iter()
            .take_while(|l| self.trail.level(l.var()) == max)
            .count();
        if at_max == 1 {
            let bt = lits.get(1).map_or(0, |l| self.trail.level(l.var()));
            self.cancel_until(bt);
            if self.config.log_clauses {
                self.log.learnt.push(lits.clone());
            }
            let first = lits[0];
            if lits.len() == 1 {
                self.trail.push(first, Reason::Decision);
            } else {
                let cref = self.attach(lits, true);
                self.trail.push(first, Reason::Clause(cref));
            }
            return true;
        }
        let cref = self.attach(lits, true);
        let (learnt, bt) = self.analyze(cref);
        self.cancel_until(bt);
        self.learn(learnt);
        self.decay();
        true
    }

    fn propagate_theories(&mut self) -> TheoryOutcome {
        for t in 0..self.theories.len() {
            let len = self.trail.len();
            for pos in self.theory_cursor[t]..len {
                let lit = self.trail.lits()[pos];
                if self.interest[lit.var().index()].contains(&(t as u32)) {
                    self.theories[t].on_assign(lit);
                }
            }
            self.theory_cursor[t] = len;
            let prefix = len;
            match self.theories[t].propagate(&self.trail.view()) {
                Propagation::Conflict(c) => {
                    if self.config.log_clauses {
                        self.log.theory.push(c.clone());
                    }
                    return TheoryOutcome::Conflict(c);
                }
                Propagation::Implied(imps) => {
                    let mut any = false;
                    for imp in imps {
                        match self.trail.value(imp.lit) {
                            LBool::True => {}
                            LBool::False => {
                                let c = self.theories[t].explain(
                                    &self.trail.view(),
                                    imp.lit,
                                    imp.tag,
                                    self.trail.len(),
                                );
                                if self.config.log_clauses {
                                    self.log.theory.push(c.clone());
                                }
                                return TheoryOutcome::Conflict(c);
                            }
                            LBool::Undef => {
                                self.trail.push(
                                    imp.lit,
                                    Reason::Theory {
                                        theory: t as u32,
                                        tag: imp.tag,
                                        prefix: prefix as u32,
                                    },
                                );
                                self.stats.theory_implications += 1;
                                if self.config.audit_reasons {
                                    self.materialize(imp.lit.var());
                                }
                                any = true;
                            }
                        }
                    }
                    if any {
                        return TheoryOutcome::Implied;
                    }
                }
            }
        }
        TheoryOutcome::Quiet
    }

    fn pick_decision(&mut self, assumptions: &[Lit]) -> Decision {
        while (self.trail.decision_level() as usize) < assumptions.len() {
            let a = assumptions[self.trail.decision_level() as usize];
            match self.trail.value(a) {
                LBool::True => self.trail.new_level(),
                LBool::False => return Decision::AssumptionFailed,
                LBool::Undef => return Decision::Lit(a),
            }
        }
        if self.config.theory_decisions {
            for t in 0..self.theories.len() {
                if let Some(l) = self.theories[t].decide_hint(&self.trail.view()) {
                    if self.trail.value(l).is_undef() {
                        self.stats.hint_decisions += 1;
                        return Decision::Lit(l);
                    }
                }
            }
        }
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.trail.var_value(Var(v as u32)).is_undef() {
                return Decision::Lit(Lit::new(Var(v as u32), self.phase[v]));
            }
        }
        Decision::Complete
    }

    fn locked(&self, cref: u32) -> bool {
        let first = self.clauses[cref as usize].lits[0];
        self.trail.value(first).is_true() && self.trail.reason(first.var()) == Reason::Clause(cref)
    }

    fn reduce_db(&mut self) {
        let mut learnts = std::mem::take(&mut self.learnts);
        learnts.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            (ca.lits.len() > 2)
                .cmp(&(cb.lits.len() > 2))
                .reverse()
                .then(ca.activity.total_cmp(&cb.activity))
        });
        let extra = self.cla_inc / learnts.len().max(1) as f64;
        let half = learnts.len() / 2;
        let mut removed = false;
        let mut kept = Vec::with_capacity(learnts.len());
        for (i, &c) in learnts.iter().enumerate() {
            let cd = &self.clauses[c as usize];
            if cd.lits.len() > 2 && !self.locked(c) && (i < half || cd.activity < extra) {
                self.clauses[c as usize].deleted = true;
                removed = true;
            } else {
                kept.push(c);
            }
        }
        self.learnts = kept;
        if removed {
            let clauses = &self.clauses;
            for ws in &mut self.watches {
                ws.retain(|w| !clauses[w.cref as usize].deleted);
            }
            for (i, c) in self.clauses.iter_mut().enumerate() {
                if c.deleted && !c.lits.is_empty() {
                    c.lits = Vec::new();
                    self.free_slots.push(i as u32);
                }
            }
        }
    }

    fn unsat() -> SolveResult {
        SolveResult {
            status: Status::Unsat,
            model: Vec::new(),
        }
    }

    /// Searches for a model extending `assumptions`.
    pub fn solve(&mut self, assumptions: &[Lit]) -> SolveResult {
        self.started = true;
        if !self.ok {
            return Self::unsat();
        }
        for a in assumptions {
            if a.var().index() >= self.num_vars() {
                return Self::unsat();
            }
        }
        self.cancel_until(0);
        self.qhead = 0;
        self.max_learnts = (self.num_original as f64 / 3.0).max(2000.0);
        let mut restart_idx = 0u32;
        let mut restart_limit = luby(2.0, restart_idx) * self.config.restart_base as f64;
        let mut since_restart = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                since_restart += 1;
                if self.trail.decision_level() == 0 {
                    self.ok = false;
                    return Self::unsat();
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                self.learn(learnt);
                self.decay();
                continue;
            }
            match self.propagate_theories() {
                TheoryOutcome::Implied => continue,
                TheoryOutcome::Conflict(c) => {
                    self.stats.conflicts += 1;
                    since_restart += 1;
                    if !self.handle_theory_conflict(c) {
                        self.ok = false;
                        self.cancel_until(0);
                        return Self::unsat();
                    }
                    continue;
                }
                TheoryOutcome::Quiet => {}
            }
            if since_restart as f64 >= restart_limit {
                self.stats.restarts += 1;
                restart_idx += 1;
                restart_limit = luby(2.0, restart_idx) * self.config.restart_base as f64;
                since_restart = 0;
                self.max_learnts *= 1.1;
                self.cancel_until(0);
                continue;
            }
            if self.learnts.len() as f64 - self.trail.len() as f64 >= self.max_learnts {
                self.reduce_db();
            }
            match self.pick_decision(assumptions) {
                Decision::Lit(l) => {
                    self.stats.decisions += 1;
                    self.trail.new_level();
                    self.trail.push(l, Reason::Decision);
                }
                Decision::AssumptionFailed => {
                    self.cancel_until(0);
                    return Self::unsat();
                }
                Decision::Complete => {
                    let model = (0..self.num_vars())
                        .map(|v| self.trail.var_value(Var(v as u32)).is_true())
                        .collect();
                    self.cancel_until(0);
                    return SolveResult {
                        status: Status::Sat,
                        model,
                    };
                }
            }
        }
    }
}

/// The Luby restart sequence scaled by powers of `y`.
fn luby(y: f64, mut x: u32) -> f64 {
    let mut size = 1u32;
    let mut seq = 0i32;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    y.powi(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(l: i32) -> Lit {
        Lit::from_dimacs(l)
    }

    fn solver_with(n: usize, clauses: &[&[i32]]) -> Solver {
        let mut s = Solver::default();
        for _ in 0..n {
            s.new_var();
        }
        for c in clauses {
            let ls: Vec<Lit> = c.iter().map(|&l| lit(l)).collect();
            s.add_clause(&ls).unwrap();
        }
        s
    }

    #[test]
    fn luby_prefix() {
        let seq: Vec<f64> = (0..15).map(|i| luby(2.0, i)).collect();
        assert_eq!(
            seq,
            vec![1., 1., 2., 1., 1., 2., 4., 1., 1., 2., 1., 1., 2., 4., 8.]
        );
    }

    #[test]
    fn contradicting_units_conflict_at_root() {
        let mut s = solver_with(1, &[]);
        assert_eq!(s.add_clause(&[lit(1)]).unwrap(), AddClause::Accepted);
        assert_eq!(s.add_clause(&[lit(-1)]).unwrap(), AddClause::ConflictAtRoot);
        assert_eq!(s.solve(&[]).status, Status::Unsat);
    }

    #[test]
    fn unit_propagation_at_root() {
        let mut s = solver_with(2, &[&[1, 2]]);
        s.add_clause(&[lit(-1)]).unwrap();
        assert_eq!(s.value(lit(2)), LBool::True);
    }

    #[test]
    fn unregistered_variable_is_rejected() {
        let mut s = solver_with(1, &[]);
        assert_eq!(
            s.add_clause(&[lit(2)]),
            Err(SolverError::UnknownVariable(Var(1)))
        );
    }

    #[test]
    fn empty_formula_is_sat() {
        let mut s = Solver::default();
        let r = s.solve(&[]);
        assert!(r.is_sat());
        assert!(r.model.is_empty());
    }

    #[test]
    fn all_sign_patterns_unsat() {
        let mut s = solver_with(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]);
        assert_eq!(s.solve(&[]).status, Status::Unsat);
    }

    #[test]
    fn chain_learns_negated_decision() {
        // x1 -> x2 -> x3 with (¬x2 ∨ ¬x3): deciding x1 conflicts at level 1.
        // x2 dominates the conflict, so it is the first UIP.
        let mut s = Solver::new(SolverConfig {
            log_clauses: true,
            ..SolverConfig::default()
        });
        for _ in 0..3 {
            s.new_var();
        }
        for c in [[-1, 2], [-2, 3], [-2, -3]] {
            s.add_clause(&[lit(c[0]), lit(c[1])]).unwrap();
        }
        s.trail.new_level();
        s.trail.push(lit(1), Reason::Decision);
        let confl = s.propagate().expect("conflict");
        let (learnt, bt) = s.analyze(confl);
        assert_eq!(learnt, vec![lit(-2)]);
        assert_eq!(bt, 0);
    }

    #[test]
    fn conflict_with_single_current_level_literal_is_kept() {
        // x1@1, x2@2 and the clause (¬x1 ∨ ¬x2) already asserts ¬x2 at level 1.
        let mut s = solver_with(2, &[&[-1, -2]]);
        s.trail.new_level();
        s.trail.push(lit(1), Reason::Decision);
        assert!(s.propagate().is_none());
        assert_eq!(s.value(lit(-2)), LBool::True);
        s.cancel_until(0);
        // Force the falsified state by hand.
        let mut s = solver_with(3, &[]);
        s.trail.new_level();
        s.trail.push(lit(1), Reason::Decision);
        s.trail.new_level();
        s.trail.push(lit(3), Reason::Decision);
        let cref = s.attach(vec![lit(-3), lit(-1)], false);
        let (learnt, bt) = s.analyze(cref);
        assert_eq!(learnt, vec![lit(-3), lit(-1)]);
        assert_eq!(bt, 1);
    }

    #[test]
    fn assumptions_restrict_models() {
        let mut s = solver_with(2, &[&[1, 2]]);
        let r = s.solve(&[lit(-1)]);
        assert!(r.is_sat());
        assert!(r.value(Var(1)));
        let r = s.solve(&[lit(-1), lit(-2)]);
        assert_eq!(r.status, Status::Unsat);
        assert!(s.solve(&[]).is_sat());
    }

    #[test]
    fn attach_after_solve_is_usage_error() {
        struct Nop;
        impl Theory for Nop {
            fn watched_vars(&self) -> Vec<Var> {
                Vec::new()
            }
            fn on_assign(&mut self, _: Lit) {}
            fn on_backjump(&mut self, _: u32) {}
            fn propagate(&mut self, _: &crate::sat::TrailView<'_>) -> Propagation {
                Propagation::none()
            }
            fn explain(
                &mut self,
                _: &crate::sat::TrailView<'_>,
                _: Lit,
                _: u32,
                _: usize,
            ) -> Vec<Lit> {
                Vec::new()
            }
        }
        let mut s = Solver::default();
        s.attach_theory(Box::new(Nop)).unwrap();
        s.solve(&[]);
        assert_eq!(
            s.attach_theory(Box::new(Nop)).err(),
            Some(SolverError::AttachAfterSolve)
        );
    }
}
