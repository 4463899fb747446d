//! Preemptive uniprocessor schedulability under earliest-deadline-first.
//!
//! `schedulable` over a set of optional tasks is negative monotonic: adding
//! a task can only make an EDF-feasible set infeasible.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::lit::Var;
use crate::smt::{
    AtomId, BindingError, Bindings, Completion, MonotonicPredicates, MonotonicTheory, Polarity,
    Side,
};

/// A task that runs on the processor iff `var` is true.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskSpec {
    pub id: usize,
    pub arrival: u64,
    pub length: u64,
    pub deadline: u64,
    pub var: Var,
}

impl TaskSpec {
    /// Whether the task cannot meet its deadline even alone.
    pub fn infeasible_alone(&self) -> bool {
        self.deadline < self.arrival || self.length > self.deadline - self.arrival
    }
}

/// A maximal interval during which one task runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slice {
    /// Index into the task list given to [`edf_feasible`].
    pub task: usize,
    pub start: u64,
    pub end: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Infeasible {
        /// The first task to miss its deadline.
        missed: usize,
        /// The task that opens the busy window ending at the miss; it starts
        /// at its own arrival.
        busy_start: usize,
        /// Tasks that arrive inside the busy window and are due by the miss.
        /// Their total demand exceeds the window, so any superset is
        /// infeasible.
        core: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdfReport {
    pub feasibility: Feasibility,
    /// The EDF schedule up to completion or to the first miss.
    pub schedule: Vec<Slice>,
}

impl EdfReport {
    pub fn is_feasible(&self) -> bool {
        self.feasibility == Feasibility::Feasible
    }
}

/// Simulates EDF with ties broken by (deadline, arrival, id). Times are
/// integers. A task that cannot fit even alone is reported as a singleton
/// core without simulating.
pub fn edf_feasible(tasks: &[TaskSpec]) -> EdfReport {
    if let Some(i) = tasks.iter().position(TaskSpec::infeasible_alone) {
        return EdfReport {
            feasibility: Feasibility::Infeasible {
                missed: i,
                busy_start: i,
                core: vec![i],
            },
            schedule: Vec::new(),
        };
    }
    let mut order: Vec<usize> = (0..tasks.len()).collect();
    order.sort_by_key(|&i| (tasks[i].arrival, tasks[i].id, i));
    let key = |i: usize| Reverse((tasks[i].deadline, tasks[i].arrival, tasks[i].id, i));
    let mut remaining: Vec<u64> = tasks.iter().map(|t| t.length).collect();
    let mut pending = BinaryHeap::new();
    let mut schedule: Vec<Slice> = Vec::new();
    let mut next = 0;
    let mut t = 0u64;
    loop {
        while next < order.len() && tasks[order[next]].arrival <= t {
            pending.push(key(order[next]));
            next += 1;
        }
        let Some(&Reverse((deadline, _, _, cur))) = pending.peek() else {
            if next == order.len() {
                break;
            }
            t = tasks[order[next]].arrival;
            continue;
        };
        if deadline <= t {
            let feasibility = miss_report(tasks, &schedule, cur, deadline);
            return EdfReport {
                feasibility,
                schedule,
            };
        }
        let next_arrival = order.get(next).map_or(u64::MAX, |&i| tasks[i].arrival);
        let stop = (t + remaining[cur]).min(next_arrival).min(deadline);
        match schedule.last_mut() {
            Some(s) if s.task == cur && s.end == t => s.end = stop,
            _ => schedule.push(Slice {
                task: cur,
                start: t,
                end: stop,
            }),
        }
        remaining[cur] -= stop - t;
        t = stop;
        if remaining[cur] == 0 {
            pending.pop();
        } else if t == deadline {
            let feasibility = miss_report(tasks, &schedule, cur, deadline);
            return EdfReport {
                feasibility,
                schedule,
            };
        }
    }
    EdfReport {
        feasibility: Feasibility::Feasible,
        schedule,
    }
}

// The busy window is the longest interval ending at `d` during which the
// processor only ran tasks due by `d`. Just before it, EDF was idle or ran
// a task due later, so nothing due by `d` was pending: every task run in
// the window arrived inside it.
fn miss_report(tasks: &[TaskSpec], schedule: &[Slice], missed: usize, d: u64) -> Feasibility {
    let mut t0 = d;
    let mut busy_start = missed;
    for s in schedule.iter().rev() {
        if s.end != t0 || tasks[s.task].deadline > d {
            break;
        }
        t0 = s.start;
        busy_start = s.task;
    }
    let core = (0..tasks.len())
        .filter(|&i| tasks[i].arrival >= t0 && tasks[i].deadline <= d)
        .collect();
    Feasibility::Infeasible {
        missed,
        busy_start,
        core,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchedError {
    #[error("task {0} has zero length")]
    ZeroLength(usize),
    #[error(transparent)]
    Binding(#[from] BindingError),
}

/// Evaluator for the `schedulable` atom of one processor.
#[derive(Debug)]
pub struct EdfSolver {
    processor: u32,
    tasks: Vec<TaskSpec>,
    arg: Vec<usize>,
}

impl EdfSolver {
    pub fn processor(&self) -> u32 {
        self.processor
    }

    pub fn tasks(&self) -> &[TaskSpec] {
        &self.tasks
    }

    fn enabled(&self, c: &Completion<'_>) -> (Vec<TaskSpec>, Vec<usize>) {
        let idx: Vec<usize> = (0..self.tasks.len())
            .filter(|&i| c.get(self.arg[i]))
            .collect();
        (idx.iter().map(|&i| self.tasks[i].clone()).collect(), idx)
    }
}

pub type ProcessorTheory = MonotonicTheory<EdfSolver>;

/// Builds the theory whose predicate atom `schedulable` holds iff the
/// enabled tasks are EDF-feasible on this processor.
pub fn processor_theory(
    processor: u32,
    tasks: Vec<TaskSpec>,
    schedulable: Var,
) -> Result<ProcessorTheory, SchedError> {
    if let Some(t) = tasks.iter().find(|t| t.length == 0) {
        return Err(SchedError::ZeroLength(t.id));
    }
    let mut bindings = Bindings::new();
    let vars: Vec<Var> = tasks.iter().map(|t| t.var).collect();
    bindings.register_predicate(schedulable, Polarity::Negative, &vars)?;
    let arg = vars
        .iter()
        .map(|&v| bindings.argument_index(v).unwrap())
        .collect();
    Ok(MonotonicTheory::new(
        EdfSolver {
            processor,
            tasks,
            arg,
        },
        bindings,
    ))
}

impl MonotonicPredicates for EdfSolver {
    fn evaluate(&mut self, _atom: AtomId, c: &Completion<'_>) -> bool {
        edf_feasible(&self.enabled(c).0).is_feasible()
    }

    fn witness(&mut self, _atom: AtomId, c: &Completion<'_>) -> Option<Vec<usize>> {
        match c.side {
            // Feasible with every task not ruled out: the disabled tasks are
            // the generic justification.
            Side::Over => None,
            Side::Under => {
                let (tasks, idx) = self.enabled(c);
                match edf_feasible(&tasks).feasibility {
                    Feasibility::Infeasible { core, .. } => {
                        Some(core.into_iter().map(|i| self.arg[idx[i]]).collect())
                    }
                    Feasibility::Feasible => {
                        panic!("schedulability witness requested for a feasible set")
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lit::Lit;
    use crate::sat::{Reason, Trail};
    use crate::smt::{Propagation, Theory};

    fn task(id: usize, a: u64, l: u64, d: u64) -> TaskSpec {
        TaskSpec {
            id,
            arrival: a,
            length: l,
            deadline: d,
            var: Var(id as u32),
        }
    }

    #[test]
    fn exact_fit_is_feasible() {
        let r = edf_feasible(&[task(0, 0, 2, 2)]);
        assert!(r.is_feasible());
        assert_eq!(
            r.schedule,
            vec![Slice {
                task: 0,
                start: 0,
                end: 2
            }]
        );
    }

    #[test]
    fn second_task_misses() {
        let r = edf_feasible(&[task(0, 0, 2, 2), task(1, 0, 2, 3)]);
        assert_eq!(
            r.feasibility,
            Feasibility::Infeasible {
                missed: 1,
                busy_start: 0,
                core: vec![0, 1]
            }
        );
    }

    #[test]
    fn singleton_too_long() {
        let r = edf_feasible(&[task(0, 0, 1, 5), task(1, 3, 3, 5)]);
        assert_eq!(
            r.feasibility,
            Feasibility::Infeasible {
                missed: 1,
                busy_start: 1,
                core: vec![1]
            }
        );
    }

    #[test]
    fn window_reaches_back_past_later_arrivals() {
        // j is preempted by i and m, each of which starts at its own arrival;
        // the core must include j even though m is the last such task.
        let r = edf_feasible(&[task(0, 0, 3, 4), task(1, 1, 1, 2), task(2, 2, 1, 3)]);
        let Feasibility::Infeasible { missed, core, .. } = r.feasibility else {
            panic!("expected a miss");
        };
        assert_eq!(missed, 0);
        assert_eq!(core, vec![0, 1, 2]);
        assert!(edf_feasible(&[task(0, 0, 3, 4), task(2, 2, 1, 3)]).is_feasible());
    }

    #[test]
    fn idle_gap_excludes_earlier_tasks() {
        let r = edf_feasible(&[task(0, 0, 2, 3), task(1, 5, 2, 7), task(2, 5, 1, 6)]);
        let Feasibility::Infeasible {
            core, busy_start, ..
        } = r.feasibility
        else {
            panic!("expected a miss");
        };
        assert_eq!(core, vec![1, 2]);
        assert!(busy_start == 1 || busy_start == 2);
    }

    fn propagate(th: &mut ProcessorTheory, nvars: usize, assign: &[i32]) -> Vec<Lit> {
        let mut t = Trail::default();
        for _ in 0..nvars {
            t.new_var();
        }
        for &d in assign {
            t.push(Lit::from_dimacs(d), Reason::Decision);
            th.on_assign(Lit::from_dimacs(d));
        }
        let view = t.view();
        let Propagation::Implied(imps) = th.propagate(&view) else {
            panic!("unexpected conflict");
        };
        assert_eq!(imps.len(), 1);
        let mut c = th.explain(&view, imps[0].lit, imps[0].tag, view.len());
        c.sort();
        c
    }

    fn sorted(v: &[i32]) -> Vec<Lit> {
        let mut c: Vec<Lit> = v.iter().map(|&d| Lit::from_dimacs(d)).collect();
        c.sort();
        c
    }

    #[test]
    fn feasible_clause_lists_disabled_tasks() {
        let tasks = vec![task(0, 0, 2, 2), task(1, 0, 2, 3), task(2, 0, 1, 10)];
        let mut th = processor_theory(0, tasks.clone(), Var(3)).unwrap();
        assert_eq!(propagate(&mut th, 4, &[-2]), sorted(&[2, 4]));
        let mut th = processor_theory(0, vec![task(0, 0, 2, 2)], Var(1)).unwrap();
        assert_eq!(propagate(&mut th, 2, &[]), sorted(&[2]));
    }

    #[test]
    fn infeasible_clause_is_the_core() {
        let tasks = vec![task(0, 0, 2, 2), task(1, 0, 2, 3), task(2, 0, 1, 10)];
        let mut th = processor_theory(0, tasks, Var(3)).unwrap();
        assert_eq!(propagate(&mut th, 4, &[1, 2]), sorted(&[-1, -2, -4]));
        let mut th = processor_theory(0, vec![task(0, 2, 3, 4)], Var(1)).unwrap();
        assert_eq!(propagate(&mut th, 2, &[1]), sorted(&[-1, -2]));
    }

    #[test]
    fn zero_length_is_rejected() {
        assert_eq!(
            processor_theory(0, vec![task(4, 0, 0, 1)], Var(9)).err(),
            Some(SchedError::ZeroLength(4))
        );
    }
}
