use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use veerpoly_cli::{run_entry, BatchSummary, RunRecord, Selection};

const M003: &str = "cPcbbbdxm_10";
const M004: &str = "cPcbbbiht_12";
const TWO_CUSPS: &str = "eLMkbcddddedde_2100";

fn veerpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_veerpoly")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn edge_orientability_only() {
    let v = json(&veerpoly(&["compute", M003, "--edge-orientability"]));
    assert_eq!(v["edge_orientable"], Value::Bool(false));
    assert_eq!(v["cover_cusps"], 1);
    assert!(v["theta"].is_null() && v["delta"].is_null());
}

#[test]
fn compute_defaults_to_everything_and_verifies() {
    let v = json(&veerpoly(&["compute", M003]));
    for k in ["theta", "delta", "delta_hat", "verify"] {
        assert!(!v[k].is_null(), "{k} missing");
    }
    assert_eq!(v["verify"]["theta_twisted_delta"], Value::Bool(true));
    assert_eq!(v["sigma"], serde_json::json!([-1]));
}

#[test]
fn selected_polynomials_only() {
    let v = json(&veerpoly(&["compute", M004, "--alex"]));
    assert!(v["theta"].is_null() && !v["delta"].is_null() && v["verify"].is_null());
}

#[test]
fn bad_signatures_exit_with_input_error() {
    let out = veerpoly(&["compute", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    // Valid isosig, angle string of the wrong length.
    assert_eq!(veerpoly(&["compute", "cPcbbbdxm_1"]).status.code(), Some(1));
}

#[test]
fn empty_filling_returns_theta() {
    let theta = json(&veerpoly(&["compute", TWO_CUSPS, "--taut"]))["theta"].clone();
    let v = json(&veerpoly(&["fill", TWO_CUSPS]));
    assert_eq!(v["specialised_taut"], theta);
    assert_eq!(v["prediction"]["case"], "I(a)");
    assert_eq!(v["cusp_bases"].as_array().unwrap().len(), 2);
}

#[test]
fn filling_reports_a_case_label() {
    let v = json(&veerpoly(&["fill", TWO_CUSPS, "--slopes", "c0:1/1"]));
    assert_eq!(v["rank_n"], 1);
    assert_eq!(v["boundary_empty"], Value::Bool(false));
    let case = &v["prediction"]["case"];
    assert!(case == "I(b) boundary", "{case}");
}

#[test]
fn filling_errors() {
    for slopes in ["c0:2/4", "c5:1/0", "c0:1", "c0:1/0,c0:0/1"] {
        assert_eq!(veerpoly(&["fill", TWO_CUSPS, "--slopes", slopes]).status.code(), Some(1), "{slopes}");
    }
    // On this cusp `a` is the null slope; any other slope kills the free homology.
    assert_eq!(veerpoly(&["fill", M004, "--slopes", "c0:0/1"]).status.code(), Some(1));
}

#[test]
fn filling_the_null_slope_closes_up() {
    let v = json(&veerpoly(&["fill", M004, "--slopes", "c0:1/0"]));
    assert_eq!(v["boundary_empty"], Value::Bool(true));
    assert_eq!(v["prediction"]["case"], "II(b)");
    assert_eq!(v["prediction"]["equality"], Value::Bool(true));
}

#[test]
fn run_records_round_trip() {
    for sig in [M003, M004, TWO_CUSPS, "oLLLLLPwQQcccefgijlmkklnnnlnewbnetafobnkj_12001112122200"] {
        let rec = run_entry(sig, Selection::ALL, true, true).unwrap();
        let text = serde_json::to_string(&rec).unwrap();
        let back: RunRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rec);
    }
}

fn census_sample() -> String {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/veering_census_with_data.txt"))
        .expect("census present");
    let mut lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).take(40).collect();
    lines.insert(7, "garbage_01");
    lines.join("\n") + "\n"
}

#[test]
fn batch_is_independent_of_job_count() {
    let dir = tempfile::tempdir().unwrap();
    let census = dir.path().join("sample.txt");
    std::fs::File::create(&census).unwrap().write_all(census_sample().as_bytes()).unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "4"] {
        let out_path = dir.path().join(format!("out{jobs}.jsonl"));
        let out = veerpoly(&[
            "batch",
            census.to_str().unwrap(),
            "--verify",
            "--jobs",
            jobs,
            "--out",
            out_path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let summary: BatchSummary = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(summary.total, 41);
        assert_eq!(summary.errors, 1);
        assert_eq!(summary.identity_fail, 0);
        assert_eq!(summary.identity_pass, 40);
        outputs.push(std::fs::read_to_string(&out_path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let records: Vec<RunRecord> = outputs[0].lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records[7].sig, "garbage_01");
    assert!(records[7].error.as_deref().unwrap().starts_with("input"));
    let mut recount = BatchSummary::default();
    records.iter().for_each(|r| recount.add(r));
    assert_eq!(recount.total, 41);
}

#[test]
fn batch_reports_unreadable_files() {
    assert_eq!(veerpoly(&["batch", "/nonexistent/census.txt"]).status.code(), Some(1));
}
