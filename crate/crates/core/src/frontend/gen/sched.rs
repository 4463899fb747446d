use crate::frontend::cardinality::{encode_cardinality, Relation};
use crate::frontend::doc::{GnfDocument, ProcessorDecl, TaskDecl};
use crate::frontend::Rng;

pub const HORIZON: u64 = 1000;

#[derive(Clone, Copy, Debug)]
pub struct SchedParams {
    pub tasks: usize,
    pub processors: usize,
    pub slack: u64,
    pub seed: u64,
}

/// Transaction size for `n` tasks.
pub fn group_size(n: usize) -> usize {
    (n / 10).clamp(1, 10)
}

/// Multiprocessor transaction scheduling. Task `i` has a length in [1, 5],
/// an arrival in (0, 1000 - slack) and deadline arrival + slack. Processor
/// `p` has a slowdown `s` in [1, 2) and runs task `i` for `ceil(s * L_i)`.
/// Each task runs on at most one processor, consecutive groups of tasks are
/// scheduled all or none, and exactly half of the tasks are scheduled.
///
/// Variables: `x[i][p]` at `1 + i * procs + p`, then the scheduled flags
/// `y[i]`, then one schedulable atom per processor, then counter auxiliaries.
pub fn gen_sched(p: &SchedParams) -> GnfDocument {
    assert!(p.processors >= 1, "need at least one processor");
    let (n, m) = (p.tasks, p.processors);
    let mut rng = Rng::new(p.seed);
    let mut doc = GnfDocument::new(0);
    doc.comments.push(format!("sched {n} {m} {}", p.slack));
    doc.comments.push(format!("seed {}", p.seed));
    let last_arrival = HORIZON.saturating_sub(p.slack).saturating_sub(1).max(1);
    let base: Vec<(u64, u64)> = (0..n)
        .map(|_| (rng.range(1, 5), rng.range(1, last_arrival)))
        .collect();
    let slowdown: Vec<f64> = (0..m).map(|_| 1.0 + rng.unit()).collect();
    let x: Vec<Vec<u32>> = (0..n)
        .map(|_| (0..m).map(|_| doc.new_var()).collect())
        .collect();
    let y: Vec<u32> = (0..n).map(|_| doc.new_var()).collect();
    for (q, &s) in slowdown.iter().enumerate() {
        let schedulable = doc.new_var();
        let tasks = base
            .iter()
            .enumerate()
            .map(|(i, &(len, arrival))| TaskDecl {
                arrival,
                length: (s * len as f64).ceil() as u64,
                deadline: arrival + p.slack,
                var: x[i][q],
            })
            .collect();
        doc.processors.push(ProcessorDecl {
            id: q as u32,
            tasks,
            schedulable: vec![schedulable],
        });
        doc.add_clause(vec![schedulable as i32]);
    }
    for i in 0..n {
        let yi = y[i] as i32;
        let mut some: Vec<i32> = vec![-yi];
        for a in 0..m {
            let xa = x[i][a] as i32;
            some.push(xa);
            doc.add_clause(vec![-xa, yi]);
            for &xb in &x[i][a + 1..] {
                doc.add_clause(vec![-xa, -(xb as i32)]);
            }
        }
        doc.add_clause(some);
    }
    for group in y.chunks(group_size(n)) {
        for pair in group.windows(2) {
            let (a, b) = (pair[0] as i32, pair[1] as i32);
            doc.add_clause(vec![-a, b]);
            doc.add_clause(vec![-b, a]);
        }
    }
    let flags: Vec<i32> = y.iter().map(|&v| v as i32).collect();
    encode_cardinality(&mut doc, &flags, n / 2, Relation::Exactly);
    doc
}
