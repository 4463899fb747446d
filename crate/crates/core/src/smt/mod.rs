//! The contract between the CDCL core and theory solvers, plus the generic
//! under/over-approximation driver for Boolean monotonic predicates.
//!
//! A theory sees the solver's trail through a [`TrailView`]. At every unit
//! propagation fixpoint the solver first replays new assignments through
//! [`Theory::on_assign`] and then calls [`Theory::propagate`]. Implied
//! literals are stored with an opaque reason `(theory, tag, prefix)`; the
//! solver only asks for the clause through [`Theory::explain`] when conflict
//! analysis resolves on it.

mod monotonic;

pub use monotonic::{
    AtomId, BindingError, Bindings, Completion, DriverStats, MonotonicPredicates, MonotonicTheory,
    PredicateBinding, Side,
};

use crate::lit::{Lit, Var};
pub use crate::sat::TrailView;

/// Whether a predicate can only become true (`Positive`) or only become
/// false (`Negative`) as its Boolean arguments flip from false to true.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A literal implied by a theory, with a theory-local tag identifying which
/// atom produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Implication {
    pub lit: Lit,
    pub tag: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    /// Literals implied by the current trail. Every literal is unassigned.
    Implied(Vec<Implication>),
    /// A clause falsified by the current trail.
    Conflict(Vec<Lit>),
}

impl Propagation {
    pub fn none() -> Propagation {
        Propagation::Implied(Vec::new())
    }
}

/// Callbacks a theory solver provides to the CDCL core.
pub trait Theory: Send {
    /// Variables whose assignments should be reported through `on_assign`.
    fn watched_vars(&self) -> Vec<Var>;

    fn on_assign(&mut self, lit: Lit);

    /// The solver backtracked so that `level` is now the current decision level.
    fn on_backjump(&mut self, level: u32);

    fn propagate(&mut self, view: &TrailView<'_>) -> Propagation;

    /// Clause justifying `implied`, which this theory produced with `tag`
    /// when the trail had length `prefix`. The clause contains `implied`;
    /// every other literal is false and was assigned before position `prefix`.
    fn explain(&mut self, view: &TrailView<'_>, implied: Lit, tag: u32, prefix: usize) -> Vec<Lit>;

    /// Optional branching suggestion. An assigned literal is ignored.
    fn decide_hint(&mut self, _view: &TrailView<'_>) -> Option<Lit> {
        None
    }
}
