use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn monosmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monosmt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, text).unwrap();
    path
}

const TRIANGLE: &str = "c triangle\np gnf 4 0\nugraph 3 3 0\nedge 0 0 1 1 1\nedge 0 1 2 2 2\nedge 0 0 2 3 3\nmst_weight_leq 0 inf 4\n";

#[test]
fn solve_reports_status_through_exit_code() {
    let sat = write("sat.gnf", "p gnf 4 2\ndigraph 3 3 0\nedge 0 0 1 1\nedge 0 1 2 2\nedge 0 0 2 3\nreach 0 0 2 4\n4 0\n-3 0\n");
    let o = monosmt(&["solve", sat.to_str().unwrap(), "--witness"]);
    assert_eq!(o.status.code(), Some(10));
    let text = stdout(&o);
    assert!(text.contains("s SATISFIABLE\nv 1 2 -3 4 0\n"), "{text}");
    assert!(text.contains("w reach 0 0 2 : 0 1 2"), "{text}");

    let unsat = write("unsat.gnf", "p gnf 4 3\ndigraph 3 3 0\nedge 0 0 1 1\nedge 0 1 2 2\nedge 0 0 2 3\nreach 0 0 2 4\n4 0\n-1 0\n-3 0\n");
    for flag in ["on", "off"] {
        let o = monosmt(&["solve", unsat.to_str().unwrap(), "--theory-decisions", flag]);
        assert_eq!(o.status.code(), Some(20));
        assert_eq!(stdout(&o), "s UNSATISFIABLE\n");
    }
}

#[test]
fn parse_errors_name_the_line() {
    let bad = write("bad.gnf", "p gnf 2 1\nedge 0 0 1 1\n1 0\n");
    let o = monosmt(&["solve", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn minimize_finds_spanning_tree_weight() {
    let f = write("triangle.gnf", TRIANGLE);
    let o = monosmt(&["minimize", f.to_str().unwrap(), "--bound-atom", "4"]);
    assert_eq!(o.status.code(), Some(10));
    assert!(
        stdout(&o).starts_with("o 3\ns SATISFIABLE\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn verify_small_instance() {
    let f = write("verify.gnf", TRIANGLE);
    let o = monosmt(&["verify", f.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("PASS\n"));
}

#[test]
fn gen_solve_render_pipeline() {
    let gen = monosmt(&["gen", "maze", "4", "4", "--seed", "2"]);
    assert!(gen.status.success());
    assert_eq!(
        stdout(&gen),
        stdout(&monosmt(&["gen", "maze", "4", "4", "--seed", "2"]))
    );
    let doc = write("maze.gnf", &stdout(&gen));
    let solved = monosmt(&["solve", doc.to_str().unwrap()]);
    assert_eq!(solved.status.code(), Some(10));
    let model = write("maze.out", &stdout(&solved));
    let r = monosmt(&["render", doc.to_str().unwrap(), model.to_str().unwrap()]);
    assert!(r.status.success());
    let picture = stdout(&r);
    assert_eq!(picture.lines().count(), 9);
    assert!(picture.contains('S') && picture.contains('F'));

    for args in [
        &["gen", "flow", "3", "3", "--mode", "random", "--seed", "1"][..],
        &["gen", "sched", "6", "2", "20"],
        &["gen", "reach-grid", "3", "3"],
        &["gen", "weighted-grid", "3", "3"],
    ] {
        let o = monosmt(args);
        assert!(o.status.success(), "{args:?}");
        assert!(stdout(&o).contains("p gnf "));
    }
}
