use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn thompson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thompson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn thompson_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_thompson"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .expect("piped")
        .write_all(input.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("binary exits")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn actions_lists_type_counts() {
    let out = thompson(&["actions", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let h3 = rows
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["action"] == "H3")
        .expect("H3 listed");
    assert_eq!(h3["types"], 4);
}

#[test]
fn passing_suite_exits_zero() {
    let out = thompson(&[
        "verify",
        "--action",
        "ROVER",
        "--what",
        "sstructure",
        "--samples",
        "50",
        "--seed",
        "7",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn failing_suite_exits_two_with_witness() {
    let out = thompson(&["verify", "--action", "prod(V2,V2)", "--what", "cup"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).expect("JSON on stderr");
    assert_eq!(err["error"], "verification");
    assert!(err["failures"][0]["witness"].is_string());
}

#[test]
fn exhausted_budget_exits_three() {
    let v = "{ sig e->00 ; sig e->01 ; sig e->10 ; sig e->11 }";
    let out = thompson(&["link", "--action", "V2", "--vertex", v, "--budget", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(
        thompson(&["link", "--action", "NOPE", "--vertex", "{ sig e->e }"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(thompson(&["no-such-verb"]).status.code(), Some(1));
    assert_eq!(
        thompson(&[
            "leq",
            "--action",
            "V2",
            "--vertex",
            "{ junk }",
            "--other",
            "{ sig e->e }"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn runs_are_byte_identical() {
    let args = [
        "verify",
        "--action",
        "QV",
        "--what",
        "scheme",
        "--samples",
        "60",
        "--seed",
        "3",
        "--format",
        "json",
    ];
    let first = thompson(&args);
    let second = thompson(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn qv_threshold() {
    let out = thompson(&[
        "finiteness",
        "--action",
        "QV",
        "--scheme",
        "maxpart",
        "--n",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["threshold"]["witness_c"], 27);
    assert_eq!(
        report["threshold"]["witness_vectors"][0],
        serde_json::json!([9, 18])
    );
    assert_eq!(report["conclusion"]["tier"], "fn");
    assert_eq!(report["conclusion"]["n"], 4);
}

#[test]
fn v_is_of_type_f_infinity() {
    let report = json(&thompson(&[
        "finiteness",
        "--action",
        "V2",
        "--format",
        "json",
    ]));
    assert_eq!(report["c1"], 2);
    assert_eq!(report["conclusion"]["tier"], "f_infinity");
}

#[test]
fn order_and_upper_bounds() {
    let top = "{ sig e->e }";
    let two = "{ sig e->0 ; sig e->1 }";
    let out = json(&thompson(&[
        "leq", "--action", "V2", "--vertex", top, "--other", two, "--format", "json",
    ]));
    assert_eq!(out["leq"], "true");
    let out = json(&thompson(&[
        "leq", "--action", "V2", "--vertex", two, "--other", top, "--format", "json",
    ]));
    assert_eq!(out["leq"], "false");
    let other = "{ sig e->00 ; sig e->01 ; sig e->1 }";
    let out = thompson(&[
        "upper-bound",
        "--action",
        "V2",
        "--vertex",
        two,
        "--other",
        other,
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn link_homology_of_rank_three_vertex() {
    let v = "{ sig e->00 ; sig e->01 ; sig e->1 }";
    let out = json(&thompson(&[
        "link",
        "--action",
        "V2",
        "--vertex",
        v,
        "--homology",
        "1",
        "--format",
        "json",
    ]));
    assert_eq!(out["complex"]["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(out["homology"]["homology"][0]["betti"], 5);
}

#[test]
fn homology_reads_stdin() {
    let circle = r#"{"vertices":["a","b","c"],"simplices":[[0,1],[1,2],[0,2]]}"#;
    let out = thompson_with_stdin(
        &[
            "homology",
            "--input",
            "-",
            "--max-dim",
            "2",
            "--format",
            "json",
        ],
        circle,
    );
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["homology"][1]["betti"], 1);
    assert_eq!(report["homology"][0]["betti"], 0);
}

#[test]
fn export_dot() {
    let v = "{ sig e->0 ; sig e->1 }";
    let out = thompson(&[
        "export", "--action", "V2", "--vertex", v, "--what", "star", "--format", "dot",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph"), "{text}");
    assert_eq!(text.matches(" -- ").count(), 2);
}
