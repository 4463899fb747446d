use crate::lit::{LBool, Lit, Var};

/// Why a variable holds its current value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    Decision,
    /// Propagated by a stored clause.
    Clause(u32),
    /// Implied by a theory; the clause is produced on demand by
    /// [`Theory::explain`](crate::smt::Theory::explain).
    Theory {
        theory: u32,
        tag: u32,
        prefix: u32,
    },
}

/// The assignment stack of the CDCL search.
#[derive(Debug, Default)]
pub struct Trail {
    values: Vec<LBool>,
    level: Vec<u32>,
    position: Vec<u32>,
    reason: Vec<Reason>,
    lits: Vec<Lit>,
    lim: Vec<usize>,
}

impl Trail {
    pub fn new_var(&mut self) {
        self.values.push(LBool::Undef);
        self.level.push(0);
        self.position.push(u32::MAX);
        self.reason.push(Reason::Decision);
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn value(&self, lit: Lit) -> LBool {
        self.values[lit.var().index()].under_sign(lit.is_positive())
    }

    #[inline]
    pub fn var_value(&self, var: Var) -> LBool {
        self.values[var.index()]
    }

    #[inline]
    pub fn level(&self, var: Var) -> u32 {
        self.level[var.index()]
    }

    #[inline]
    pub fn position(&self, var: Var) -> usize {
        self.position[var.index()] as usize
    }

    #[inline]
    pub fn reason(&self, var: Var) -> Reason {
        self.reason[var.index()]
    }

    pub fn decision_level(&self) -> u32 {
        self.lim.len() as u32
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    /// Trail length at the start of `level` (level 0 starts at 0).
    pub fn level_start(&self, level: u32) -> usize {
        if level == 0 {
            0
        } else {
            self.lim[level as usize - 1]
        }
    }

    pub fn new_level(&mut self) {
        self.lim.push(self.lits.len());
    }

    pub fn push(&mut self, lit: Lit, reason: Reason) {
        let v = lit.var().index();
        debug_assert!(self.values[v].is_undef());
        self.values[v] = LBool::from_bool(lit.is_positive());
        self.level[v] = self.decision_level();
        self.position[v] = self.lits.len() as u32;
        self.reason[v] = reason;
        self.lits.push(lit);
    }

    /// Pops every assignment above `level`, returning them in reverse trail order.
    pub fn backtrack(&mut self, level: u32, mut on_pop: impl FnMut(Lit)) {
        if self.decision_level() <= level {
            return;
        }
        let start = self.lim[level as usize];
        while self.lits.len() > start {
            let lit = self.lits.pop().unwrap();
            let v = lit.var().index();
            self.values[v] = LBool::Undef;
            self.position[v] = u32::MAX;
            on_pop(lit);
        }
        self.lim.truncate(level as usize);
    }

    pub fn view(&self) -> TrailView<'_> {
        TrailView { trail: self }
    }
}

/// Read-only window onto the solver's trail handed to theories.
#[derive(Clone, Copy)]
pub struct TrailView<'a> {
    trail: &'a Trail,
}

impl<'a> TrailView<'a> {
    #[inline]
    pub fn value(&self, lit: Lit) -> LBool {
        self.trail.value(lit)
    }

    #[inline]
    pub fn var_value(&self, var: Var) -> LBool {
        self.trail.var_value(var)
    }

    /// Value of `var` counting only assignments made before trail position `prefix`.
    #[inline]
    pub fn value_before(&self, var: Var, prefix: usize) -> LBool {
        let v = self.trail.var_value(var);
        if !v.is_undef() && self.trail.position(var) < prefix {
            v
        } else {
            LBool::Undef
        }
    }

    pub fn level(&self, var: Var) -> u32 {
        self.trail.level(var)
    }

    pub fn position(&self, var: Var) -> Option<usize> {
        if self.trail.var_value(var).is_undef() {
            None
        } else {
            Some(self.trail.position(var))
        }
    }

    pub fn decision_level(&self) -> u32 {
        self.trail.decision_level()
    }

    pub fn lits(&self) -> &'a [Lit] {
        self.trail.lits()
    }

    pub fn len(&self) -> usize {
        self.trail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trail.is_empty()
    }

    pub fn num_vars(&self) -> usize {
        self.trail.num_vars()
    }
}
