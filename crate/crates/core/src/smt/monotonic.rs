use std::collections::HashMap;

use thiserror::Error;

use super::{Implication, Polarity, Propagation, Theory, TrailView};
use crate::lit::{LBool, Lit, Var};

/// Handle of a predicate atom inside one theory, in registration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Which completion of the partial argument assignment is being evaluated.
///
/// `Under` sets every unassigned argument to false, `Over` sets every
/// unassigned argument to true.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Under,
    Over,
}

/// A total assignment to a theory's argument atoms, derived from the trail.
#[derive(Clone, Copy, Debug)]
pub struct Completion<'a> {
    pub side: Side,
    pub values: &'a [bool],
    /// Identifies this exact completion for memoization; `None` for
    /// one-off completions such as those rebuilt for explanations.
    pub epoch: Option<u64>,
}

impl<'a> Completion<'a> {
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.values[i]
    }
}

/// Concrete evaluators for a family of monotonic predicates over a shared
/// vector of argument atoms.
pub trait MonotonicPredicates: Send {
    /// Truth value of the predicate on a complete argument assignment.
    fn evaluate(&mut self, atom: AtomId, completion: &Completion<'_>) -> bool;

    /// Argument indices whose current assignments justify the value that
    /// `evaluate` returned on `completion`. On the `Under` side these must be
    /// arguments that are true in the completion, on the `Over` side
    /// arguments that are false. `None` requests the generic fallback.
    fn witness(&mut self, _atom: AtomId, _completion: &Completion<'_>) -> Option<Vec<usize>> {
        None
    }

    /// Suggests an unassigned argument (true in `over`, false in `under`) to
    /// decide true.
    fn decide_hint(
        &mut self,
        _under: &Completion<'_>,
        _over: &Completion<'_>,
        _atom_values: &[LBool],
    ) -> Option<usize> {
        None
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BindingError {
    #[error("predicate variable {0} is also one of its own arguments")]
    PredicateIsArgument(Var),
    #[error("variable {0} is already bound to a predicate of this theory")]
    PredicateReused(Var),
    #[error("variable {0} is a predicate atom and cannot be an argument")]
    ArgumentIsPredicate(Var),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateBinding {
    pub var: Var,
    pub polarity: Polarity,
    /// Indices into the theory's argument atoms.
    pub args: Vec<usize>,
}

/// The argument (S) and predicate (P) atoms owned by one theory.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    s_vars: Vec<Var>,
    s_index: HashMap<Var, usize>,
    predicates: Vec<PredicateBinding>,
    p_index: HashMap<Var, AtomId>,
}

impl Bindings {
    pub fn new() -> Bindings {
        Bindings::default()
    }

    /// Registers an argument atom; re-registering returns the existing index.
    pub fn register_argument(&mut self, var: Var) -> Result<usize, BindingError> {
        if self.p_index.contains_key(&var) {
            return Err(BindingError::ArgumentIsPredicate(var));
        }
        if let Some(&i) = self.s_index.get(&var) {
            return Ok(i);
        }
        let i = self.s_vars.len();
        self.s_vars.push(var);
        self.s_index.insert(var, i);
        Ok(i)
    }

    pub fn register_predicate(
        &mut self,
        var: Var,
        polarity: Polarity,
        args: &[Var],
    ) -> Result<AtomId, BindingError> {
        if args.contains(&var) {
            return Err(BindingError::PredicateIsArgument(var));
        }
        if self.s_index.contains_key(&var) {
            return Err(BindingError::ArgumentIsPredicate(var));
        }
        if self.p_index.contains_key(&var) {
            return Err(BindingError::PredicateReused(var));
        }
        let mut idx = Vec::with_capacity(args.len());
        for &a in args {
            let i = self.register_argument(a)?;
            if !idx.contains(&i) {
                idx.push(i);
            }
        }
        let id = AtomId(self.predicates.len() as u32);
        self.predicates.push(PredicateBinding {
            var,
            polarity,
            args: idx,
        });
        self.p_index.insert(var, id);
        Ok(id)
    }

    pub fn arguments(&self) -> &[Var] {
        &self.s_vars
    }

    pub fn argument_index(&self, var: Var) -> Option<usize> {
        self.s_index.get(&var).copied()
    }

    pub fn predicates(&self) -> &[PredicateBinding] {
        &self.predicates
    }

    pub fn predicate(&self, id: AtomId) -> &PredicateBinding {
        &self.predicates[id.index()]
    }

    pub fn predicate_of(&self, var: Var) -> Option<AtomId> {
        self.p_index.get(&var).copied()
    }
}

/// The completion that can prove a predicate true, and the one that can
/// prove it false. For negative-monotonic predicates the roles swap.
#[inline]
fn proving_sides(polarity: Polarity) -> (Side, Side) {
    match polarity {
        Polarity::Positive => (Side::Under, Side::Over),
        Polarity::Negative => (Side::Over, Side::Under),
    }
}

#[inline]
fn side_slot(side: Side) -> usize {
    match side {
        Side::Under => 0,
        Side::Over => 1,
    }
}

/// Counters describing how much work the driver did.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DriverStats {
    pub evaluations: u64,
    pub cache_hits: u64,
    pub explanations: u64,
    pub fallback_explanations: u64,
}

/// Generic theory solver for a set of monotonic predicates: evaluates each
/// predicate on the under- and over-completion of the trail and propagates
/// the predicate atom when either completion decides it.
pub struct MonotonicTheory<P> {
    preds: P,
    bindings: Bindings,
    dirty_under: bool,
    dirty_over: bool,
    epoch_counter: u64,
    epoch_under: u64,
    epoch_over: u64,
    under: Vec<bool>,
    over: Vec<bool>,
    cache: Vec<[Option<bool>; 2]>,
    scratch: Vec<bool>,
    stats: DriverStats,
}

impl<P: MonotonicPredicates> MonotonicTheory<P> {
    pub fn new(preds: P, bindings: Bindings) -> MonotonicTheory<P> {
        let n = bindings.arguments().len();
        let m = bindings.predicates().len();
        MonotonicTheory {
            preds,
            bindings,
            dirty_under: true,
            dirty_over: true,
            epoch_counter: 0,
            epoch_under: 0,
            epoch_over: 0,
            under: vec![false; n],
            over: vec![true; n],
            cache: vec![[None, None]; m],
            scratch: vec![false; n],
            stats: DriverStats::default(),
        }
    }

    pub fn predicates(&self) -> &P {
        &self.preds
    }

    pub fn bindings(&self) -> &Bindings {
        &self.bindings
    }

    pub fn stats(&self) -> DriverStats {
        self.stats
    }

    /// Whether the cached under/over completions are stale.
    pub fn dirty(&self) -> (bool, bool) {
        (self.dirty_under, self.dirty_over)
    }

    fn refresh(&mut self, view: &TrailView<'_>) {
        if self.dirty_under {
            for (slot, &v) in self.under.iter_mut().zip(self.bindings.arguments()) {
                *slot = view.var_value(v).is_true();
            }
            self.epoch_counter += 1;
            self.epoch_under = self.epoch_counter;
            self.cache.iter_mut().for_each(|c| c[0] = None);
            self.dirty_under = false;
        }
        if self.dirty_over {
            for (slot, &v) in self.over.iter_mut().zip(self.bindings.arguments()) {
                *slot = !view.var_value(v).is_false();
            }
            self.epoch_counter += 1;
            self.epoch_over = self.epoch_counter;
            self.cache.iter_mut().for_each(|c| c[1] = None);
            self.dirty_over = false;
        }
        debug_assert!(self.under.iter().zip(&self.over).all(|(&u, &o)| !u || o));
    }

    fn eval_cached(&mut self, id: usize, side: Side) -> bool {
        let slot = side_slot(side);
        if let Some(v) = self.cache[id][slot] {
            self.stats.cache_hits += 1;
            return v;
        }
        self.stats.evaluations += 1;
        let (values, epoch) = match side {
            Side::Under => (&self.under, self.epoch_under),
            Side::Over => (&self.over, self.epoch_over),
        };
        let completion = Completion {
            side,
            values,
            epoch: Some(epoch),
        };
        let v = self.preds.evaluate(AtomId(id as u32), &completion);
        self.cache[id][slot] = Some(v);
        v
    }

    /// Runs the under/over-approximation check for every predicate atom in
    /// registration order. The first contradiction found is returned as a
    /// conflict clause.
    pub fn drive_propagation(&mut self, view: &TrailView<'_>) -> Propagation {
        self.refresh(view);
        let mut implied = Vec::new();
        for id in 0..self.bindings.predicates().len() {
            let PredicateBinding { var, polarity, .. } = self.bindings.predicates()[id];
            let value = view.var_value(var);
            let (true_side, false_side) = proving_sides(polarity);
            if !value.is_true() && self.eval_cached(id, true_side) {
                if value.is_false() {
                    return Propagation::Conflict(self.explain_implication(
                        view,
                        var.pos(),
                        id,
                        view.len(),
                    ));
                }
                implied.push(Implication {
                    lit: var.pos(),
                    tag: id as u32,
                });
                continue;
            }
            if !value.is_false() && !self.eval_cached(id, false_side) {
                if value.is_true() {
                    return Propagation::Conflict(self.explain_implication(
                        view,
                        var.neg(),
                        id,
                        view.len(),
                    ));
                }
                implied.push(Implication {
                    lit: var.neg(),
                    tag: id as u32,
                });
            }
        }
        Propagation::Implied(implied)
    }

    /// Builds the justification clause for `implied` (the predicate atom of
    /// `id`, in either sign) from the trail prefix of length `prefix`.
    pub fn explain_implication(
        &mut self,
        view: &TrailView<'_>,
        implied: Lit,
        id: usize,
        prefix: usize,
    ) -> Vec<Lit> {
        self.stats.explanations += 1;
        let binding = &self.bindings.predicates()[id];
        debug_assert_eq!(binding.var, implied.var());
        let (true_side, false_side) = proving_sides(binding.polarity);
        let side = if implied.is_positive() {
            true_side
        } else {
            false_side
        };
        let args = self.bindings.arguments();
        let mut scratch = std::mem::take(&mut self.scratch);
        for (slot, &v) in scratch.iter_mut().zip(args) {
            let val = view.value_before(v, prefix);
            *slot = match side {
                Side::Under => val.is_true(),
                Side::Over => !val.is_false(),
            };
        }
        let completion = Completion {
            side,
            values: &scratch,
            epoch: None,
        };
        let witness = match self.preds.witness(AtomId(id as u32), &completion) {
            Some(w) => w,
            None => {
                self.stats.fallback_explanations += 1;
                let binding = &self.bindings.predicates()[id];
                binding
                    .args
                    .iter()
                    .copied()
                    .filter(|&i| match side {
                        Side::Under => scratch[i],
                        Side::Over => !scratch[i],
                    })
                    .collect()
            }
        };
        let args = self.bindings.arguments();
        let mut clause = Vec::with_capacity(witness.len() + 1);
        clause.push(implied);
        for i in witness {
            let v = args[i];
            let val = view.value_before(v, prefix);
            let lit = match (side, val) {
                (Side::Under, LBool::True) => v.neg(),
                (Side::Over, LBool::False) => v.pos(),
                _ => panic!(
                    "witness for {:?} uses argument {} with value {:?} on the {:?} side",
                    implied, v, val, side
                ),
            };
            if !clause.contains(&lit) {
                clause.push(lit);
            }
        }
        self.scratch = scratch;
        clause
    }
}

impl<P: MonotonicPredicates> Theory for MonotonicTheory<P> {
    fn watched_vars(&self) -> Vec<Var> {
        self.bindings.arguments().to_vec()
    }

    fn on_assign(&mut self, lit: Lit) {
        if self.bindings.argument_index(lit.var()).is_some() {
            if lit.is_positive() {
                self.dirty_under = true;
            } else {
                self.dirty_over = true;
            }
        }
    }

    fn on_backjump(&mut self, _level: u32) {
        self.dirty_under = true;
        self.dirty_over = true;
    }

    fn propagate(&mut self, view: &TrailView<'_>) -> Propagation {
        self.drive_propagation(view)
    }

    fn explain(&mut self, view: &TrailView<'_>, implied: Lit, tag: u32, prefix: usize) -> Vec<Lit> {
        self.explain_implication(view, implied, tag as usize, prefix)
    }

    fn decide_hint(&mut self, view: &TrailView<'_>) -> Option<Lit> {
        self.refresh(view);
        let atom_values: Vec<LBool> = self
            .bindings
            .predicates()
            .iter()
            .map(|p| view.var_value(p.var))
            .collect();
        let under = Completion {
            side: Side::Under,
            values: &self.under,
            epoch: Some(self.epoch_under),
        };
        let over = Completion {
            side: Side::Over,
            values: &self.over,
            epoch: Some(self.epoch_over),
        };
        let i = self.preds.decide_hint(&under, &over, &atom_values)?;
        let var = self.bindings.arguments()[i];
        view.var_value(var).is_undef().then(|| var.pos())
    }
}
