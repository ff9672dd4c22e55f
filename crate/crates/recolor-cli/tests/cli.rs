//! End-to-end tests driving the compiled binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_BIN_EXE_recolor"));
    assert!(p.exists(), "binary missing at {}", p.display());
    p = p.canonicalize().unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], stdin: &[u8]) -> Output {
    use std::io::Write;
    let mut child = Command::new(bin())
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const C5: &str = r#"{"schema":"instance/1","n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]],
"lists":{"0":[1,2,3],"1":[1,2,3],"2":[1,2,3],"3":[1,2,3],"4":[1,2,3]}}"#;

const STAR: &str = r#"{"schema":"instance/1","n":4,"edges":[[0,1],[0,2],[0,3]]}"#;

fn col(values: &[(usize, u32)]) -> String {
    let body: Vec<String> = values
        .iter()
        .map(|(v, c)| format!("\"{v}\":{c}"))
        .collect();
    format!("{{\"schema\":\"colouring/1\",\"colours\":{{{}}}}}", body.join(","))
}

#[test]
fn explore_c5_reports_two_components_of_fifteen() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(&dir, "c5.json", C5);
    let out = run(&["explore", "--instance", &inst]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], 30);
    assert_eq!(v["frozen"], 0);
    assert_eq!(v["components"][0]["size"], 15);
    assert_eq!(v["components"][1]["size"], 15);
}

#[test]
fn plan_verify_round_trip_via_pipe() {
    // Star K_{1,3} under synthesized deg1-shared lists: centre {1,2,3,4},
    // leaves {1,2}.
    let dir = tempfile::tempdir().unwrap();
    let inst = write(&dir, "star.json", STAR);
    let a = write(&dir, "a.json", &col(&[(0, 3), (1, 1), (2, 1), (3, 1)]));
    let b = write(&dir, "b.json", &col(&[(0, 4), (1, 2), (2, 2), (3, 2)]));
    let planned = run(&["plan", "--instance", &inst, "--from", &a, "--to", &b]);
    assert!(
        planned.status.success(),
        "plan failed: {}",
        String::from_utf8_lossy(&planned.stderr)
    );
    let verified = run_stdin(
        &["verify", "--instance", &inst, "--from", &a, "--to", &b],
        &planned.stdout,
    );
    assert!(
        verified.status.success(),
        "verify failed: {}",
        String::from_utf8_lossy(&verified.stderr)
    );
    let end: serde_json::Value = serde_json::from_slice(&verified.stdout).unwrap();
    assert_eq!(end["colours"]["0"], 4);
}

#[test]
fn verify_rejects_wrong_endpoint() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(&dir, "star.json", STAR);
    let a = write(&dir, "a.json", &col(&[(0, 3), (1, 1), (2, 1), (3, 1)]));
    let plan = write(
        &dir,
        "p.json",
        r#"{"schema":"plan/1","steps":[{"vertex":0,"colour":4}]}"#,
    );
    let other = write(&dir, "b.json", &col(&[(0, 3), (1, 2), (2, 2), (3, 2)]));
    let out = run(&[
        "verify", "--instance", &inst, "--from", &a, "--plan", &plan, "--to", &other,
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes_for_bad_input_domain_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(&dir, "broken.json", "{not json");
    let out = run(&["explore", "--instance", &broken]);
    assert_eq!(out.status.code(), Some(2));

    // Disconnected instance: planner rejects on domain grounds.
    let disc = write(
        &dir,
        "disc.json",
        r#"{"schema":"instance/1","n":4,"edges":[[0,1],[2,3]]}"#,
    );
    let a = write(&dir, "a.json", &col(&[(0, 1), (1, 2), (2, 1), (3, 2)]));
    let out = run(&["plan", "--instance", &disc, "--from", &a, "--to", &a]);
    assert_eq!(out.status.code(), Some(1));

    let inst = write(&dir, "c5.json", C5);
    let out = run(&["explore", "--instance", &inst, "--budget", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn distance_between_components_is_null() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(&dir, "c5.json", C5);
    let a = write(&dir, "a.json", &col(&[(0, 1), (1, 2), (2, 1), (3, 2), (4, 3)]));
    // Opposite winding classes: no path exists between them.
    let b = write(&dir, "b.json", &col(&[(0, 1), (1, 3), (2, 2), (3, 1), (4, 3)]));
    let out = run(&["distance", "--instance", &inst, "--from", &a, "--to", &b]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["distance"].is_null());
}

#[test]
fn winding_paper_values() {
    let dir = tempfile::tempdir().unwrap();
    let f0 = write(
        &dir,
        "f0.json",
        &col(&[(0, 1), (1, 2), (2, 1), (3, 2), (4, 1), (5, 2), (6, 1), (7, 2)]),
    );
    let out = run(&["winding", "--colouring", &f0]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["winding"], 0);

    let f2 = write(
        &dir,
        "f2.json",
        &col(&[(0, 1), (1, 2), (2, 3), (3, 1), (4, 2), (5, 3), (6, 1), (7, 2)]),
    );
    let out = run(&["winding", "--colouring", &f2]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["winding"], 2);
}

#[test]
fn generate_shatter_explores_to_factorial_components() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run(&["generate", "shatter", "--n", "3", "--p", "2"]);
    assert!(gen.status.success());
    let inst = write(&dir, "shatter.json", &String::from_utf8_lossy(&gen.stdout));
    let out = run(&["explore", "--instance", &inst]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let comps = v["components"].as_array().unwrap();
    let non_singleton = comps.iter().filter(|c| c["size"] != 1).count();
    assert_eq!(non_singleton, 6); // 3!
    assert!(comps.iter().filter(|c| c["size"] != 1).all(|c| c["size"] == 2));
}

#[test]
fn census_k3_counts() {
    let out = run(&["census", "--n", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["classes"], 3);
    assert_eq!(v["bad"], 1);
}

#[test]
fn list_policies() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(&dir, "star.json", STAR);
    // uniform:2 under --strict fails (max degree 3 needs 4 colours).
    let a = write(&dir, "a.json", &col(&[(0, 1), (1, 2), (2, 2), (3, 2)]));
    let out = run(&[
        "plan", "--instance", &inst, "--from", &a, "--to", &a, "--lists", "uniform:2",
        "--strict",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // deg1-extra:0 gives the centre surplus 2, so the direct procedure runs.
    let b = write(&dir, "b.json", &col(&[(0, 4), (1, 1), (2, 1), (3, 1)]));
    let a2 = write(&dir, "a2.json", &col(&[(0, 3), (1, 1), (2, 1), (3, 1)]));
    let out = run(&[
        "plan", "--instance", &inst, "--from", &a2, "--to", &b, "--lists", "deg1-extra:0",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["trace"][0]["lemma"], "key-lemma");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(&dir, "c5.json", C5);
    let a = run(&["explore", "--instance", &inst]);
    let b = run(&["explore", "--instance", &inst]);
    assert_eq!(a.stdout, b.stdout);

    let gen1 = run(&["generate", "mobius-kantor"]);
    let gen2 = run(&["generate", "mobius-kantor"]);
    assert_eq!(gen1.stdout, gen2.stdout);
}
