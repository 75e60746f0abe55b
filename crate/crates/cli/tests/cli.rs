use std::fs;
use std::process::{Command, Output};

use hasse_witt_cli::{report_for_line, run_batch, Failure, Status};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hasse-witt")).args(args).output().expect("binary runs")
}

fn json_report(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = bin(&full);
    let v: Value = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (v, out.status.code().unwrap())
}

#[test]
fn hilbert_at_infinity() {
    let out = bin(&["hilbert", "--a", "-1", "--b", "-1", "--place", "inf"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "-1");
}

#[test]
fn embedding_first_quartic() {
    let (v, code) = json_report(&["embedding", "--poly", "-1,1,0,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["outputs"]["lift"], false);
    assert_eq!(v["outputs"]["lift_delta"], true);
    assert_eq!(v["assumptions"].as_array().unwrap().len(), 1);
}

#[test]
fn hypersurface_cubic_surface() {
    let (v, code) = json_report(&["hypersurface", "--n", "2", "--d", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["chi"], 9);
    assert_eq!(v["outputs"]["b_n"], 7);
    assert_eq!(v["outputs"]["w2_qB"], serde_json::json!([2, "inf"]));
    let (v, _) = json_report(&["hypersurface", "--n", "2", "--degrees", "2,2"]);
    assert_eq!(v["outputs"]["chi"], 8);
    assert!(v["outputs"]["delta1"].is_null());
}

#[test]
fn form_commands() {
    let (v, _) = json_report(&["form", "invariants", "--gram", "2,0;0,-6"]);
    assert_eq!(v["outputs"]["w1"], -3);
    let (v, _) = json_report(&["form", "isometric", "--gram1", "0,1;1,0", "--gram2", "1,0;0,-1"]);
    assert_eq!(v["outputs"]["isometric"], true);
    let (v, _) = json_report(&["delta", "--gram-omega", "1,0;0,1", "--gram-eta", "2,0;0,6"]);
    assert_eq!(v["outputs"]["delta1"], 3);
}

#[test]
fn jehanne_and_tracefield() {
    let (v, _) = json_report(&["jehanne", "--p", "5", "--type", "2^2", "--disc", "-275"]);
    assert_eq!(v["outputs"]["w2_local"], -1);
    assert_eq!(v["outputs"]["symbol_2_df"], 1);
    let (v, _) = json_report(&["tracefield", "--poly", "-1,-4,-2,0,1"]);
    assert_eq!(v["outputs"]["discriminant"], "-2816");
}

#[test]
fn input_errors_exit_one() {
    let (v, code) = json_report(&["tracefield", "--poly", "1,-2,1"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "input_error");
    assert!(v.get("outputs").is_none());
    let out = bin(&["jehanne", "--p", "2", "--type", "1^4", "--disc", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let out = bin(&["hilbert", "--a", "0", "--b", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invariant_violations_map_to_exit_two() {
    let f = Failure::from(hasse_witt::Error::Invariant("x".into()));
    assert_eq!(f.status, Status::InternalError);
    assert_eq!(f.status.exit_code(), 2);
}

#[test]
fn output_is_deterministic() {
    let a = bin(&["embedding", "--poly", "-1,-2,0,1,1", "--json"]);
    let b = bin(&["embedding", "--poly", "-1,-2,0,1,1", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let line = r#"{"id":"x","command":"hypersurface","parameters":{"n":4,"d":2}}"#;
    assert_eq!(report_for_line(line).to_string(), report_for_line(line).to_string());
}

#[test]
fn batch_lines() {
    let input = [
        r#"{"id":"a","command":"hilbert","parameters":{"a":-1,"b":-1,"place":"inf"}}"#,
        "",
        r#"{"id":"b","command":"embedding","parameters":{"poly":"-1,-4,-2,0,1"}}"#,
        r#"not json"#,
        r#"{"id":"c","command":"nope","parameters":{}}"#,
    ]
    .join("\n");
    let out: Vec<Value> = run_batch(&input).iter().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(out.len(), 4);
    assert_eq!(out[0]["outputs"]["symbol"], -1);
    assert_eq!(out[1]["outputs"]["lift"], true);
    assert_eq!(out[2]["status"], "input_error");
    assert_eq!(out[3]["status"], "input_error");
    assert_eq!(out[3]["id"], "c");
}

#[test]
fn batch_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.jsonl");
    let output = dir.path().join("out.jsonl");
    fs::write(
        &input,
        [
            r#"{"id":"1","command":"form_invariants","parameters":{"gram":"1,0;0,1"}}"#,
            r#"{"id":"2","command":"tracefield","parameters":{"poly":"-1,1,0,0,1"}}"#,
            r#"{"id":"3","command":"hypersurface","parameters":{"n":2,"degrees":[2,3]}}"#,
        ]
        .join("\n"),
    )
    .unwrap();
    let out = bin(&["batch", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&output).unwrap();
    let ids: Vec<String> = text
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .inspect(|v| assert_eq!(v["status"], "ok"))
        .map(|v| v["id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids, ["1", "2", "3"]);

    fs::write(&input, "").unwrap();
    assert!(bin(&["batch", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()]).status.success());
    assert_eq!(fs::read_to_string(&output).unwrap(), "");

    let missing = dir.path().join("missing.jsonl");
    let out = bin(&["batch", "--in", missing.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
