use std::process::{Command, Output};

use serde_json::Value;

fn nsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn frame_bracket_of_generators() {
    let out = nsym(&["bracket", "--space", "frame:2", "pi_1", "q^1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        serde_json::to_string(&v["result"]).unwrap(),
        r#"{"rank":1,"components":{"1":"1","2":"0"}}"#
    );
    for key in ["space", "command", "inputs", "result", "checks", "paper_notes"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn bracket_accepts_braces() {
    let a = json(&nsym(&["bracket", "pi_2", "q^1_2"]));
    let b = json(&nsym(&["bracket", "{pi_2, q^1_2}"]));
    assert_eq!(a["result"], b["result"]);
    // {pi_k, q^i_j} = delta^i_k I_j
    assert_eq!(a["result"]["components"]["1"], "0");
    assert_eq!(a["result"]["components"]["2"], "0");
    let c = json(&nsym(&["bracket", "pi_1", "q^1_2"]));
    assert_eq!(c["result"]["components"]["2"], "1");
}

#[test]
fn circle_e2_passes_with_three_relations() {
    let out = nsym(&["verify", "--space", "circle", "e2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn symmetric_quartic_carries_a_comparison_note() {
    let out = nsym(&["quantize", "--space", "frame:2", "--mode", "sym", "pi_1 (*) pi_1 (*) q^1 (*) q^1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["operator"], "X1^2*P1^2 - 2i*hbar*X1*P1*I1 - 1/2*hbar^2*I1");
    let notes = v["paper_notes"].as_array().unwrap();
    assert_eq!(notes.len(), 1);
    assert!(notes[0].as_str().unwrap().contains("published value -1/3"));
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = ["verify", "--space", "frame:2", "--seed", "9", "--trials", "5", "jacobi"];
    let (a, b) = (nsym(&args), nsym(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn failing_checks_exit_nonzero() {
    let out = nsym(&["verify", "c4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn errors_exit_with_two() {
    let out = nsym(&["bracket", "pi_1 (*) (*) q^1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1:10"), "{err}");
    assert_eq!(nsym(&["bracket", "--space", "frame:1", "pi_1", "q^1"]).status.code(), Some(2));
    assert_eq!(nsym(&["bracket", "pi_3", "q^1"]).status.code(), Some(2));
    assert_eq!(nsym(&["kernel", "--space", "s3"]).status.code(), Some(2));
    assert_eq!(nsym(&["verify", "--space", "c2", "e2"]).status.code(), Some(2));
}

#[test]
fn structure_rejection_names_the_equation() {
    let out = nsym(&["hvf", "--space", "circle", "[q^1 (*) q^1; 0]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("structure equation 1"));
}

#[test]
fn every_criterion_is_a_verify_target() {
    for k in [1, 6, 7, 9] {
        let out = nsym(&["verify", &format!("c{k}")]);
        assert_eq!(out.status.code(), Some(0), "c{k}");
    }
}

#[test]
fn text_format_lists_checks() {
    let out = nsym(&["bracket", "--space", "c2", "--format", "text", "x1", "x2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("f = -w^2 - z^2"), "{text}");
    assert!(text.contains("[ok  ] antisymmetry"));
}
