use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
}

fn hcur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcur"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("hcur runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn empty_scan_is_an_empty_table() {
    let out = hcur(&["brane-scan", "--d", "--p"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"], serde_json::json!([]));
}

#[test]
fn scan_reports_every_cell() {
    let out = hcur(&["brane-scan", "--d", "3,11", "--p", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out)["result"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 4);
}

#[test]
fn missing_file_exits_one() {
    let out = hcur(&["truncate", "--model", "data/no-such-model.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-model"));
}

#[test]
fn unknown_generator_exits_one() {
    let out = hcur(&["serre", "--ring", "data/s4-ring.json", "--g4", "e1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn flux_of_wrong_degree_is_rejected() {
    let out = hcur(&["serre", "--ring", "data/s4-ring.json", "--g4", "vol vol"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn bad_thread_count_exits_one() {
    let out = Command::new(env!("CARGO_BIN_EXE_hcur"))
        .args(["brane-scan", "--d", "3", "--p", "1"])
        .env("HCUR_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn rank_beyond_dimension_exits_two() {
    let out = hcur(&["clifford", "export", "--d", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_format_is_readable() {
    let out = hcur(&["--format", "text", "serre", "--ring", "data/s4-ring.json", "--g4", "vol", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[1, 0, 0, 0, 0, 0, 0, 1]"), "{text}");
}

#[test]
fn output_flag_matches_stdout() {
    let path = scratch("clifford.json");
    let args = ["clifford", "export", "--d", "4", "--ranks", "1,2"];
    let direct = hcur(&args);
    let mut with_out = vec!["--output", path.to_str().unwrap()];
    with_out.extend(args);
    let written = hcur(&with_out);
    assert!(written.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn verify_round_trip_and_tamper() {
    let path = scratch("t11.json");
    let out = hcur(&["--output", path.to_str().unwrap(), "serre", "--ring", "data/t11-ring.json", "--g4", "e1e2e3e4"]);
    assert_eq!(out.status.code(), Some(0));

    let ok = hcur(&["verify", path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));

    let mut report: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(report["result"]["result"]["dim"], 489);
    report["result"]["result"]["outgoing"]["rank"] = serde_json::json!(20);
    let forged = scratch("t11-forged.json");
    std::fs::write(&forged, serde_json::to_vec_pretty(&report).unwrap()).unwrap();
    let bad = hcur(&["verify", forged.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_refuses_non_reports() {
    let path = scratch("junk.json");
    std::fs::write(&path, "{\"hello\": 1}").unwrap();
    let out = hcur(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
