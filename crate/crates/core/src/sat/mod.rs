//! Conflict-driven clause learning with hooks for lazy theories.

mod heap;
mod solver;
mod trail;

pub use solver::{
    AddClause, ClauseLog, SolveResult, Solver, SolverConfig, SolverError, Stats, Status,
};
pub use trail::{Reason, Trail, TrailView};
