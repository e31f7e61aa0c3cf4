use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewforms")).args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_skewforms"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const PLANE: &str = r#"{"generators":[
  {"terms":[{"i":1,"j":4,"c":"1"},{"i":2,"j":5,"c":"1"}]},
  {"terms":[{"i":1,"j":6,"c":"1"},{"i":3,"j":5,"c":"1"}]},
  {"terms":[{"i":2,"j":6,"c":"1"},{"i":3,"j":4,"c":"-1"}]}]}"#;

#[test]
fn rank_and_pfaffian() {
    let o = run(&["rank", "--builtin", "pi_g"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "generic rank 4, Pf-cubic ≡ 0\n");
    let o = run(&["pfaffian", "--builtin", "thm_dim3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["zero"], true);
}

#[test]
fn intersection_table() {
    let o = run(&["gr-intersect", "--builtin", "thm_dim4b"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "p,count,type\n5,12,2-lines\n7,16,2-lines\n11,24,2-lines\n");
}

#[test]
fn stability_from_stdin() {
    let o = run_stdin(&["stability", "--input", "-", "--json"], PLANE);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tag"], "StrictlySemistable");
    assert_eq!(v["evidence"]["path"], "exact_general_plane");
}

#[test]
fn classify_and_scroll() {
    let o = run(&["classify-plane", "--builtin", "pi_t"]);
    assert_eq!(stdout(&o), "label: tangent\n");
    let o = run(&["scroll", "--builtin", "pi_g", "--quadric-dim", "--count", "--primes", "5,7", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lambda_dim"], 9);
    assert_eq!(v["quadric_dim"], 14);
    assert_eq!(v["point_counts"]["5"], 186);
    assert_eq!(v["point_counts"]["7"], 456);
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--theorem", "dim4a"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("1 reports, 0 failed\n"));
}

#[test]
fn computation_failures_exit_one() {
    let o = run(&["scroll", "--builtin", "pi_t"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not of general type"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["rank"])), 2);
    assert_eq!(code(&run(&["rank", "--builtin", "nope"])), 2);
    assert_eq!(code(&run(&["rank", "--builtin", "pi_g", "--primes", "4"])), 2);
    assert_eq!(code(&run(&["rank", "--builtin", "pi_g", "--primes", "53"])), 2);
    assert_eq!(code(&run(&["rank", "--builtin", "pi_g", "--jobs", "0"])), 2);
    assert_eq!(code(&run(&["rank", "--input", "/nonexistent.json"])), 2);
    assert_eq!(code(&run_stdin(&["rank", "--input", "-"], "{not json")), 2);
    assert_eq!(code(&run(&["verify", "--theorem", "dim9"])), 2);
}

#[test]
fn output_is_reproducible() {
    for args in [
        &["orbit-sample", "--builtin", "thm_dim3", "--seed", "7"][..],
        &["stability", "--builtin", "beta_lines", "--json"][..],
        &["gr-intersect", "--builtin", "thm_dim5", "--json", "--jobs", "2"][..],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn orbit_samples_stay_in_the_orbit() {
    let o = run(&["orbit-sample", "--builtin", "pi_g", "--seed", "3"]);
    let moved = stdout(&o);
    let c = run_stdin(&["classify-plane", "--input", "-"], &moved);
    assert_eq!(stdout(&c).lines().next(), Some("label: general"));
}
