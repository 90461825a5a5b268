use std::process::Command;

use serde_json::Value;

fn verify(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_verify")).args(args).env("HSPIN_JOBS", "2").output().expect("run verify");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf8"))
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out) = verify(args);
    (code, serde_json::from_str(&out).expect("json report"))
}

#[test]
fn empty_grid_is_an_empty_report() {
    let (code, v) = json(&["--suite", "fundamental_solutions", "--m", ""]);
    assert_eq!(code, 0);
    assert_eq!(v["cases"], serde_json::json!([]));
    assert_eq!(v["summary"], serde_json::json!({"pass": 0, "fail": 0}));
}

#[test]
fn fundamental_solution_grid() {
    let (code, v) = json(&["--suite", "fundamental_solutions", "--m", "3,5", "--k", "0,1", "--order", "1,2,3,4"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["pass"], 16);
    let case = &v["cases"][0];
    assert_eq!(case["status"], "pass");
    assert!(case["runtime_ms"].is_u64());
}

#[test]
fn pole_parameters_are_skipped() {
    let (code, v) = json(&["--suite", "prop_B", "--m", "4", "--k", "0", "--s", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["skipped-pole"], 3);
}

#[test]
fn failures_set_the_exit_code() {
    let (code, v) = json(&["--suite", "c_alpha", "--m", "5", "--k", "1", "--alpha", "-1"]);
    assert_eq!(code, 1);
    let printed = v["cases"].as_array().unwrap().iter().find(|c| c["id"] == "c_alpha/m=5,k=1,alpha=-1").unwrap();
    assert_eq!(printed["status"], "fail");
    assert_eq!(printed["notes"]["hw.c_printed"], "-24/5");
    assert_eq!(printed["notes"]["hw.c_operator"], "14/5");
}

#[test]
fn tiny_budget_skips() {
    let (code, v) = json(&["--suite", "fundamental_solutions", "--m", "5", "--k", "2", "--order", "4", "--budget", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["cases"][0]["status"], "skipped-budget");
}

#[test]
fn reports_are_deterministic() {
    let args = ["--suite", "intertwining", "--k", "1", "--order", "1", "--seed", "3"];
    let (_, a) = json(&args);
    let (_, b) = json(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a["digest"], b["digest"]);
    let strip = |mut v: Value| {
        for c in v["cases"].as_array_mut().unwrap() {
            c["runtime_ms"] = Value::from(0);
        }
        v
    };
    assert_eq!(strip(a), strip(b));
}

#[test]
fn text_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let (code, _) = verify(&["--suite", "cocycle", "--order", "1", "--format", "text", "--report", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.contains("cocycle/m=3,t=-1"));
    assert!(text.contains("summary: pass=2 fail=0"));
}

#[test]
fn unknown_suite_is_rejected() {
    let (code, _) = verify(&["--suite", "nope"]);
    assert_eq!(code, 2);
}
