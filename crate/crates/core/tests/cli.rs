use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eca-circuits"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn scan_lists_22_reversible_rules() {
    let o = run(&["scan", "--n-min", "4", "--n-max", "12", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    let rules = v["rules"].as_object().unwrap();
    assert_eq!(rules.len(), 256);
    let reversible = rules
        .values()
        .filter(|entries| entries.as_array().unwrap().iter().any(|e| e["reversible"] == true))
        .count();
    assert_eq!(reversible, 22);
    let first = &rules["90"][0];
    assert!(first["n"].is_u64() && first["bc"].is_string());
}

#[test]
fn scan_is_deterministic() {
    let a = run(&["scan", "--n-min", "4", "--n-max", "8"]);
    let b = run(&["scan", "--n-min", "4", "--n-max", "8"]);
    assert_eq!(a.stdout, b.stdout);
    let threaded = bin()
        .args(["scan", "--n-min", "4", "--n-max", "8"])
        .env("ECA_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(a.stdout, threaded.stdout);
}

#[test]
fn scan_text_format() {
    let o = run(&["scan", "--n-min", "4", "--n-max", "5", "--format", "text"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("170 periodic 4,5"));
    assert!(text.contains("22 of 256"));
}

#[test]
fn scan_range_is_validated() {
    let o = run(&["scan", "--n-min", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "domain");
}

#[test]
fn synth_identity_rule_is_empty() {
    let o = run(&["synth", "--rule", "204", "--n", "5", "--bc", "fixed"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["n"], 5);
    assert_eq!(v["gates"].as_array().unwrap().len(), 0);
}

#[test]
fn synth_irreversible_is_negative_verdict() {
    let o = run(&["synth", "--rule", "90", "--n", "7", "--bc", "fixed"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let stderr = String::from_utf8(o.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1);
    let err: Value = serde_json::from_str(&stderr).unwrap();
    assert_eq!(err["error"], "not-reversible");
}

#[test]
fn prove_uses_closed_form_family() {
    let o = run(&["prove", "--rule", "166", "--n", "4", "--bc", "periodic"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["source"], "family");
    assert_eq!(v["witness"], serde_json::json!([[1, 0, 1, 0], [0, 1, 0, 1]]));
    assert_eq!(v["image"], serde_json::json!([1, 1, 1, 1]));
}

#[test]
fn prove_falls_back_to_bruteforce() {
    let o = run(&["prove", "--rule", "110", "--n", "6", "--bc", "periodic"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["source"], "bruteforce");

    let o = run(&["prove", "--rule", "170", "--n", "6", "--bc", "periodic"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["reversible"], true);
}

#[test]
fn check_and_verify() {
    let o = run(&["check", "--rule", "30", "--n", "8", "--bc", "periodic"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["reversible"], false);

    let o = run(&["check", "--rule", "150", "--n", "7", "--bc", "periodic", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().contains("reversible"));

    let o = run(&["verify", "--rule", "166", "--n", "9", "--bc", "periodic"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["verified"], true);
    assert_eq!(v["states_checked"], 512);

    let o = run(&["verify", "--rule", "204", "--n", "17", "--bc", "fixed"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_error_exit_code() {
    let o = run(&["synth", "--rule", "60"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "usage");
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

fn write(dir: &Path, name: &str, contents: &[u8]) -> String {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn synth_output_feeds_sim_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let circuit_path = dir.path().join("c150.json");
    let o = run(&[
        "synth", "--rule", "150", "--n", "7", "--bc", "periodic", "--output",
        circuit_path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let path = circuit_path.to_str().unwrap();

    // Circuit and rule step agree on a configuration.
    let via_circuit = run(&["sim", "--circuit", path, "--config", "1001100"]);
    let via_rule = run(&["sim", "--rule", "150", "--bc", "periodic", "--config", "1001100"]);
    assert_eq!(via_circuit.status.code(), Some(0));
    assert_eq!(via_circuit.stdout, via_rule.stdout);
    assert_eq!(stdout_json(&via_rule)["bits"].as_array().unwrap().len(), 7);

    let text = run(&["sim", "--circuit", path, "--config", "1000000", "--format", "text"]);
    assert_eq!(String::from_utf8(text.stdout).unwrap().trim(), "1100001");

    let rendered = run(&["render", "--circuit", path]);
    assert_eq!(rendered.status.code(), Some(0));
    let diagram = String::from_utf8(rendered.stdout).unwrap();
    assert_eq!(diagram.lines().count(), 7);
    assert!(diagram.starts_with("q0: "));
}

#[test]
fn sim_state_vector() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = run(&["synth", "--rule", "170", "--n", "2", "--bc", "periodic"]);
    // n = 2 is below the synthesis minimum; build the swap circuit directly.
    assert_eq!(circuit.status.code(), Some(2));
    let c = write(
        dir.path(),
        "swap.json",
        br#"{"n": 2, "gates": [{"kind": "swap", "targets": [0, 1]}]}"#,
    );
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let state = format!(r#"{{"n": 2, "amplitudes": [[{h}, 0], [0, 0], [{h}, 0], [0, 0]]}}"#);
    let s = write(dir.path(), "state.json", state.as_bytes());
    let o = run(&["sim", "--circuit", &c, "--state", &s]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["amplitudes"][0][0], h);
    assert_eq!(v["amplitudes"][1][0], h);
    assert_eq!(v["amplitudes"][2][0], 0.0);
}

#[test]
fn render_rejects_bad_circuit_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(
        dir.path(),
        "bad.json",
        br#"{"n": 2, "gates": [{"kind": "HADAMARD", "targets": [0]}]}"#,
    );
    let o = run(&["render", "--circuit", &c]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "parse");
    assert!(err["message"].as_str().unwrap().contains("gates[0].kind"));
}
