use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use monosmt::frontend::gen::{self, CapacityMode, FlowParams, MazeParams, SchedParams};
use monosmt::frontend::{
    minimize_bound, model_line, parse, parse_model, render_ascii, run_solve, GnfDocument,
    MinimizeOutcome, SolveOptions,
};
use monosmt::oracle::{self, ClauseCheck, OracleResult};

#[derive(Parser)]
#[command(name = "monosmt", version, about = "SAT modulo monotonic theories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a GNF file.
    Solve {
        file: PathBuf,
        /// Print a witness line for every true theory atom.
        #[arg(long)]
        witness: bool,
        #[arg(long, value_enum, default_value = "on")]
        theory_decisions: Switch,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print solver statistics as comment lines.
        #[arg(long)]
        stats: bool,
    },
    /// Find the smallest satisfiable bound of an mst_weight_leq or distance_leq atom.
    Minimize {
        file: PathBuf,
        #[arg(long)]
        bound_atom: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate a benchmark instance on stdout.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Cross-check the solver against the brute-force oracle.
    Verify { file: PathBuf },
    /// Draw a maze model as ASCII.
    Render { file: PathBuf, model: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Unit,
    Random,
}

#[derive(Subcommand)]
enum GenKind {
    Maze {
        width: usize,
        height: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Add an unasserted mst_weight_leq atom for `minimize`.
        #[arg(long)]
        bound_atom: bool,
    },
    Flow {
        width: usize,
        height: usize,
        #[arg(long, value_enum, default_value = "unit")]
        mode: Mode,
        /// Required flow; 4 in unit mode and 8 in random mode by default.
        #[arg(long)]
        demand: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Sched {
        tasks: usize,
        processors: usize,
        slack: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reachability on a random directed grid.
    ReachGrid {
        width: usize,
        height: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Weighted undirected grid with a bound atom for `minimize`.
    WeightedGrid {
        width: usize,
        height: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load(path: &Path) -> Result<GnfDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn solve(file: &Path, opts: SolveOptions, stats: bool) -> Result<ExitCode> {
    let doc = load(file)?;
    let report = run_solve(&doc, &opts)?;
    if stats {
        let s = report.stats;
        println!(
            "c decisions {} hint_decisions {} propagations {} conflicts {} theory_conflicts {} theory_implications {} restarts {}",
            s.decisions, s.hint_decisions, s.propagations, s.conflicts, s.theory_conflicts, s.theory_implications, s.restarts
        );
    }
    print!("{}", report.render());
    Ok(ExitCode::from(if report.is_sat() { 10 } else { 20 }))
}

fn minimize(file: &Path, atom: u32, seed: u64) -> Result<ExitCode> {
    let doc = load(file)?;
    let opts = SolveOptions {
        seed,
        ..SolveOptions::default()
    };
    match minimize_bound(&doc, atom, &opts)? {
        MinimizeOutcome::Optimal { bound, model } => {
            println!("o {bound}");
            println!("s SATISFIABLE");
            println!("{}", model_line(&model));
            Ok(ExitCode::from(10))
        }
        MinimizeOutcome::Infeasible { upper } => {
            println!("c unsatisfiable at bound {upper}");
            println!("s UNSATISFIABLE");
            Ok(ExitCode::from(20))
        }
    }
}

fn generate(kind: GenKind) -> GnfDocument {
    match kind {
        GenKind::Maze {
            width,
            height,
            seed,
            bound_atom,
        } => gen::gen_maze(&MazeParams {
            width,
            height,
            seed,
            bound_atom,
        }),
        GenKind::Flow {
            width,
            height,
            mode,
            demand,
            seed,
        } => gen::gen_flow(&FlowParams {
            width,
            height,
            mode: match mode {
                Mode::Unit => CapacityMode::Unit,
                Mode::Random => CapacityMode::Random,
            },
            demand,
            seed,
        }),
        GenKind::Sched {
            tasks,
            processors,
            slack,
            seed,
        } => gen::gen_sched(&SchedParams {
            tasks,
            processors,
            slack,
            seed,
        }),
        GenKind::ReachGrid {
            width,
            height,
            seed,
        } => gen::gen_reach_grid(width, height, seed),
        GenKind::WeightedGrid {
            width,
            height,
            seed,
        } => gen::gen_weighted_grid(width, height, seed),
    }
}

fn verify(file: &Path) -> Result<ExitCode> {
    let doc = load(file)?;
    let expected = oracle::brute_force_solve(&doc)?;
    let opts = SolveOptions {
        log_clauses: true,
        ..SolveOptions::default()
    };
    let report = run_solve(&doc, &opts)?;
    let mut ok = true;
    match (&expected, report.is_sat()) {
        (OracleResult::Sat(_), true) | (OracleResult::Unsat, false) => {
            println!(
                "c status agrees: {}",
                if report.is_sat() { "SAT" } else { "UNSAT" }
            );
        }
        _ => {
            println!(
                "c status MISMATCH: oracle {:?}, solver {:?}",
                expected_name(&expected),
                report.status
            );
            ok = false;
        }
    }
    if report.is_sat() {
        match oracle::check_model(&doc, &report.model)? {
            Ok(()) => println!("c model checks"),
            Err(v) => {
                println!("c model INVALID: {v}");
                ok = false;
            }
        }
    }
    let mut bad = 0;
    for clause in &report.clause_log.theory {
        let dimacs: Vec<i32> = clause.iter().map(|l| l.to_dimacs()).collect();
        if let ClauseCheck::Counterexample(m) = oracle::check_clause_valid(&doc, &dimacs)? {
            println!(
                "c theory clause {dimacs:?} INVALID, counterexample {}",
                model_line(&m)
            );
            bad += 1;
        }
    }
    println!(
        "c {} theory clauses checked, {bad} invalid",
        report.clause_log.theory.len()
    );
    ok &= bad == 0;
    println!("{}", if ok { "PASS" } else { "FAIL" });
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn expected_name(r: &OracleResult) -> &'static str {
    match r {
        OracleResult::Sat(_) => "SAT",
        OracleResult::Unsat => "UNSAT",
    }
}

fn render(file: &Path, model_file: &Path) -> Result<ExitCode> {
    let doc = load(file)?;
    let text = fs::read_to_string(model_file)
        .with_context(|| format!("reading {}", model_file.display()))?;
    if text.lines().any(|l| l.trim() == "s UNSATISFIABLE") {
        bail!("{} reports no model", model_file.display());
    }
    let model = parse_model(&text, doc.num_vars).map_err(anyhow::Error::msg)?;
    print!("{}", render_ascii(&doc, &model)?);
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve {
            file,
            witness,
            theory_decisions,
            seed,
            stats,
        } => {
            let opts = SolveOptions {
                witness,
                theory_decisions: matches!(theory_decisions, Switch::On),
                seed,
                log_clauses: false,
            };
            solve(&file, opts, stats)
        }
        Command::Minimize {
            file,
            bound_atom,
            seed,
        } => minimize(&file, bound_atom, seed),
        Command::Gen { kind } => {
            print!("{}", generate(kind));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file } => verify(&file),
        Command::Render { file, model } => render(&file, &model),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
