//! End-to-end tests driving the compiled binary: output shapes, exit
//! codes, and report determinism.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_usolr"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

/// Writes `content` to a unique temp file and returns its path.
fn temp_file(content: &str) -> PathBuf {
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let id = COUNTER.fetch_add(1, Ordering::Relaxed);
    let mut path = std::env::temp_dir();
    path.push(format!("usolr-cli-test-{}-{id}.txt", std::process::id()));
    std::fs::write(&path, content).expect("temp file written");
    path
}

fn gen_to_file(family: &str) -> PathBuf {
    let out = run(&["gen", family]);
    assert!(out.status.success(), "gen {family} failed");
    temp_file(&stdout(&out))
}

#[test]
fn gen_emits_parsable_graph_text() {
    let out = run(&["gen", "star:5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("5 4\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn gen_rejects_unknown_and_malformed_families() {
    assert_eq!(run(&["gen", "torus:3"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "star"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "cycle:2"]).status.code(), Some(2));
}

#[test]
fn solve_answers_yes_on_complete_graph() {
    let g = gen_to_file("complete:4");
    let out = run(&["solve", g.to_str().unwrap(), "--algo", "opt", "--p", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("YES\n"));
}

#[test]
fn solve_answers_no_on_bowtie() {
    let g = gen_to_file("oddcactus:3,3");
    for algo in ["rand", "det", "opt", "oracle"] {
        let out = run(&["solve", g.to_str().unwrap(), "--algo", algo]);
        assert!(out.status.success(), "algo {algo}");
        assert!(stdout(&out).starts_with("NO\n"), "algo {algo}");
    }
}

#[test]
fn solve_answers_no_on_disconnected_graph() {
    let g = temp_file("4 2\n0 1\n2 3\n");
    let out = run(&["solve", g.to_str().unwrap(), "--p", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("NO\n"));
}

#[test]
fn solve_defaults_p_to_vertex_count() {
    let g = gen_to_file("cycle:4");
    let out = run(&["solve", g.to_str().unwrap(), "--algo", "oracle", "--json", "--no-timing"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"]["p"], 4);
    assert_eq!(report["verdict"]["answer"], "NO");
}

#[test]
fn feasible_reports_method_and_certificate() {
    let g = gen_to_file("cycle:5");
    let s = temp_file("0 1 2\n");
    let shift = temp_file("1 2 3\n");
    let swap = temp_file("0 2 1\n");
    let out = run(&["feasible", g.to_str().unwrap(), s.to_str().unwrap(), shift.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("REACHABLE\n"));
    assert!(text.contains("method: cycle-rule"));
    let out = run(&["feasible", g.to_str().unwrap(), s.to_str().unwrap(), swap.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("UNREACHABLE\n"));
}

#[test]
fn accumulate_prints_final_configuration_and_moves() {
    let g = temp_file("4 3\n0 1\n1 2\n2 3\n");
    let s = temp_file("3 1\n");
    let out = run(&["accumulate", g.to_str().unwrap(), s.to_str().unwrap(), "--moves"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("final: 1 0\n"), "got {text}");
    assert!(text.lines().count() > 1, "move log expected");
}

#[test]
fn classes_reports_the_cycle_split() {
    let g = gen_to_file("cycle:3");
    let out = run(&["classes", g.to_str().unwrap(), "--p", "3", "--json", "--no-timing"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"]["total"], 6);
    assert_eq!(report["verdict"]["class_count"], 2);
    assert_eq!(report["verdict"]["fraction"], "1/2");
}

#[test]
fn augment_constructive_plans_the_star_cycle() {
    let g = gen_to_file("star:5");
    let out = run(&["augment", g.to_str().unwrap(), "--p", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("added edges: (1,4) (2,3) (3,4)"), "got {text}");
    assert!(text.contains("method: p-cycle-construction"));
    assert!(text.contains("verified: YES"));
}

#[test]
fn augment_reports_solvable_input() {
    let g = gen_to_file("complete:4");
    let out = run(&["augment", g.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("already universally solvable"));
}

#[test]
fn augment_exhaustive_respects_budgets() {
    let g = gen_to_file("z:1,1");
    let out = run(&["augment", g.to_str().unwrap(), "--mode", "exhaustive", "--alpha", "1", "--beta", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("no augmentation within budgets"));
    let out = run(&["augment", g.to_str().unwrap(), "--mode", "exhaustive", "--alpha", "2", "--beta", "2", "--json", "--no-timing"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"]["status"], "plan");
    assert_eq!(report["verdict"]["added_vertices"], 0);
    assert_eq!(report["verdict"]["added_edges"].as_array().unwrap().len(), 2);
}

#[test]
fn reports_are_byte_identical_without_timings() {
    let g = gen_to_file("cycle:4");
    let args = [
        "solve",
        g.to_str().unwrap(),
        "--algo",
        "rand",
        "--seed",
        "11",
        "--trials",
        "3",
        "--json",
        "--no-timing",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reports_carry_input_digests_and_seed() {
    let g = gen_to_file("cycle:4");
    let out = run(&["solve", g.to_str().unwrap(), "--algo", "rand", "--seed", "3", "--json", "--no-timing"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["seed"], 3);
    let digest = report["inputs"][0]["sha256"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
    assert!(report.get("timings").is_none());
}

#[test]
fn parse_errors_exit_with_code_two() {
    let g = temp_file("not a graph\n");
    assert_eq!(run(&["solve", g.to_str().unwrap()]).status.code(), Some(2));
    let missing = std::env::temp_dir().join("usolr-cli-test-no-such-file.txt");
    assert_eq!(run(&["solve", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn cap_overruns_exit_with_code_three() {
    let g = gen_to_file("cycle:6");
    let out = run(&["classes", g.to_str().unwrap(), "--p", "6", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn corpus_passes_on_tiny_sizes() {
    let out = run(&["corpus", "--max-n", "3", "--trials", "300", "--json", "--no-timing"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"]["passed"], true);
    assert_eq!(report["verdict"]["solver_disagreements"], 0);
    assert_eq!(report["verdict"]["graphs"], 5);
}
