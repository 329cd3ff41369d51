use std::process::{Command, Output};

use serde_json::Value;

fn qladder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qladder"))
        .args(args)
        .env_remove("QLADDER_TOLERANCE")
        .env_remove("QLADDER_QUAD_EPS")
        .env_remove("QLADDER_TAIL_EPS")
        .output()
        .expect("spawn qladder")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn single_check_gives_records_with_the_stable_schema() {
    let out = qladder(&["suite", "--check", "INT_4_2", "--q", "0.3", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let records = v.as_array().unwrap();
    assert!(!records.is_empty());
    let mut keys: Vec<_> = records[0].as_object().unwrap().keys().cloned().collect();
    keys.sort();
    let mut want = vec![
        "check_id",
        "equation_ref",
        "params",
        "lhs_re",
        "lhs_im",
        "rhs_re",
        "rhs_im",
        "abs_err",
        "rel_err",
        "tolerance",
        "pass",
        "runtime_ms",
    ];
    want.sort();
    assert_eq!(keys, want);
    for r in records {
        assert_eq!(r["check_id"], "INT_4_2");
        assert_eq!(r["params"]["q"], 0.3);
        assert_eq!(r["pass"], true);
    }
}

#[test]
fn reports_are_reproducible_apart_from_runtime() {
    let run = || {
        let out = qladder(&["suite", "--section", "2", "--q", "0.5", "--format", "json"]);
        assert_eq!(code(&out), 0);
        let mut v = json(&out);
        for r in v.as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("runtime_ms");
        }
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&qladder(&["suite", "--q", "1.5"])), 2);
    assert_eq!(code(&qladder(&["suite", "--check", "NOT_A_CHECK"])), 2);
    assert_eq!(code(&qladder(&["suite", "--check", "INT_2_2", "--tolerance", "INT_2_2=-1"])), 2);
    assert_eq!(code(&qladder(&["measure", "v-m", "--q", "0.5", "--a", "1"])), 2);
    assert_eq!(code(&qladder(&["eval", "--family", "nope", "--n", "1", "--q", "0.5", "--x", "0.1"])), 2);
    // An impossible tolerance turns passing checks into failures.
    assert_eq!(code(&qladder(&["suite", "--check", "INT_2_2", "--q", "0.5", "--tolerance", "INT_2_2=1e-300"])), 1);
    assert_eq!(code(&qladder(&["list"])), 0);
}

#[test]
fn tolerance_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_qladder"))
        .args(["suite", "--check", "ID_3_5", "--q", "0.5", "--format", "json"])
        .env("QLADDER_TOLERANCE", "*=0.25")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(json(&out).as_array().unwrap().iter().all(|r| r["tolerance"] == 0.25));
}

#[test]
fn csv_and_file_output() {
    let path = std::env::temp_dir().join(format!("qladder-cli-test-{}.csv", std::process::id()));
    let out = qladder(&["suite", "--check", "ID_2_3", "--q", "0.5", "--format", "csv", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap().len(), 12);
    assert_eq!(reader.records().count(), 8);
}

#[test]
fn eval_continuous_hermite() {
    let out = qladder(&[
        "eval",
        "--family",
        "continuous-q-hermite",
        "--n",
        "2",
        "--q",
        "0.5",
        "--x",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!((v["explicit"][0].as_f64().unwrap() - 3.5).abs() < 1e-13);
    assert!((v["recurrence"][0].as_f64().unwrap() - 3.5).abs() < 1e-13);
}

#[test]
fn eval_rational_family_notes_missing_recurrence() {
    let out = qladder(&[
        "eval",
        "--family",
        "ismail-masson",
        "--n",
        "2",
        "--q",
        "0.5",
        "--t1",
        "0.37",
        "--t2",
        "-0.29",
        "--xi",
        "0.4",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("recurrence: none"));
}

#[test]
fn carlitz_measure_is_a_probability_measure() {
    let out = qladder(&["measure", "carlitz", "--q", "0.5", "--a", "-1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!((v["total_mass"][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let rows = v["rows"].as_array().unwrap();
    let last = rows.last().unwrap()["cumulative"][0].as_f64().unwrap();
    assert!((last - 1.0).abs() < 1e-12);
}

#[test]
fn qinv_hermite_table_has_both_branches() {
    let out = qladder(&["measure", "qinv-hermite", "--q", "0.5", "--t", "0.8", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let xs: Vec<f64> = v["rows"].as_array().unwrap().iter().map(|r| r["location"].as_f64().unwrap()).collect();
    assert!(xs.iter().any(|&x| x < -1.0) && xs.iter().any(|&x| x > 1.0));
}
