use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_summakit"))
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str], config: &Path) -> Output {
    bin()
        .args(args)
        .arg("--config")
        .arg(config)
        .output()
        .unwrap()
}

const CESARO_16: &str = r#"{
    "matrix_a": {"kind": "cesaro"},
    "matrix_b": {"kind": "cesaro"},
    "lambda": {"kind": "constant", "c": 1.0},
    "series": {"kind": "alternating", "beta": 1.0},
    "k": 1.0,
    "N": 16
}"#;

fn check_golden(name: &str, actual: &[u8]) {
    let path = golden(name);
    if std::env::var_os("SUMMAKIT_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read(&path).unwrap();
    assert!(expected == actual, "{name} differs from golden output");
}

#[test]
fn transform_matches_golden() {
    let out = run(&["transform"], &golden("cesaro_transform.json"));
    assert_eq!(out.status.code(), Some(0));
    check_golden("cesaro_transform.csv", &out.stdout);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,a_n,s_n,A_n,delta_A_n,t_n,running_total\n"));
}

#[test]
fn check_json_has_metadata_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", CESARO_16);
    let out = run(&["check", "--format", "json", "--tail-cutoff", "64"], &cfg);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["metadata"]["command"], "check");
    assert_eq!(doc["metadata"]["tail_cutoff"], 64);
    let rows = doc["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["condition_id"] == "TA_c"));
    assert!(rows.iter().all(|r| r["trend"] == "bounded-looking"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", CESARO_16);
    let dest = dir.path().join("report.csv");
    let out = bin()
        .args(["check", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&dest)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dest).unwrap();
    assert!(
        text.starts_with("condition_id,v_or_n,ratio,running_sup,trend,tail_cutoff,tail_warning\n")
    );
}

#[test]
fn verify_cesaro_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", CESARO_16);
    let out = run(&["verify", "--seed", "7"], &cfg);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains(",false"));
    assert!(text.contains("decomposition,"));
    let strict = run(&["verify", "--strict-paper-mode"], &cfg);
    assert_eq!(strict.status.code(), Some(0));
    assert!(String::from_utf8(strict.stdout)
        .unwrap()
        .contains("strict_cnv_sup_diff"));
}

#[test]
fn verify_retains_first_column_when_row_sums_differ() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "adv.json",
        r#"{
            "matrix_a": {"kind": "cesaro"},
            "matrix_b": {"kind": "explicit", "entries": [[2.0], [0.5, 1.0], [0.25, 0.5, 1.5], [0.1, 0.2, 0.3, 0.9]]},
            "lambda": {"kind": "power", "alpha": -1.0, "shift": 1},
            "k": 2.0,
            "N": 3
        }"#,
    );
    let out = bin()
        .env("SUMMAKIT_LOG", "info")
        .args(["verify", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("first column true"));
}

#[test]
fn config_errors_exit_2_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (CESARO_16.replace("\"k\": 1.0", "\"k\": 0.5"), "k:"),
        (
            CESARO_16
                .replace(
                    r#"{"kind": "cesaro"},
    "matrix_b""#,
                    r#"{"kind": "explicit", "entries": [[1.0], [0.5, 0.0], [0.2, 0.3, 0.5]]},
    "matrix_b""#,
                )
                .replace("\"N\": 16", "\"N\": 2"),
            "row 1",
        ),
        (
            CESARO_16.replace(
                r#"{"kind": "alternating", "beta": 1.0}"#,
                r#"{"kind": "explicit", "values": []}"#,
            ),
            "empty",
        ),
        (CESARO_16.replace("\"N\": 16", "\"N\": 16,"), "parse"),
    ];
    for (i, (body, needle)) in cases.iter().enumerate() {
        let cfg = write_config(dir.path(), &format!("bad{i}.json"), body);
        let out = run(&["transform"], &cfg);
        assert_eq!(out.status.code(), Some(2), "case {i}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(needle), "case {i}: {err}");
    }
    let out = bin()
        .args(["check", "--config", "/nonexistent/config.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn short_explicit_matrix_is_tail_unavailable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "short.json",
        r#"{
            "matrix_a": {"kind": "explicit", "entries": [[1.0], [0.5, 0.5], [0.2, 0.3, 0.5]]},
            "matrix_b": {"kind": "explicit", "entries": [[1.0], [0.5, 0.5], [0.2, 0.3, 0.5]]},
            "lambda": {"kind": "constant", "c": 1.0},
            "k": 1.0,
            "N": 2
        }"#,
    );
    assert_eq!(run(&["check"], &cfg).status.code(), Some(3));
    let only_local = write_config(
        dir.path(),
        "local.json",
        &std::fs::read_to_string(&cfg).unwrap().replace(
            "\"N\": 2",
            "\"N\": 2, \"conditions\": [\"C9\", \"C12\", \"C16\"]",
        ),
    );
    assert_eq!(run(&["check"], &only_local).status.code(), Some(0));
}

#[test]
fn explicit_round_trip_reproduces_report() {
    // Cesaro written out explicitly gives the same local conditions as the family.
    let order = 8;
    let rows: Vec<Vec<f64>> = (0..=order)
        .map(|n| vec![1.0 / (n + 1) as f64; n + 1])
        .collect();
    let conditions = r#"["C9", "C12", "C13", "C14", "C15", "C16", "L1LK"]"#;
    let family = format!(
        r#"{{"matrix_a": {{"kind": "cesaro"}}, "matrix_b": {{"kind": "cesaro"}},
            "lambda": {{"kind": "constant", "c": 1.0}}, "k": 2.0, "N": {order}, "conditions": {conditions}}}"#
    );
    let explicit = format!(
        r#"{{"matrix_a": {{"kind": "explicit", "entries": {m}}}, "matrix_b": {{"kind": "explicit", "entries": {m}}},
            "lambda": {{"kind": "constant", "c": 1.0}}, "k": 2.0, "N": {order}, "conditions": {conditions}}}"#,
        m = serde_json::to_string(&rows).unwrap()
    );
    let dir = tempfile::tempdir().unwrap();
    let a = run(&["check"], &write_config(dir.path(), "f.json", &family));
    let b = run(&["check"], &write_config(dir.path(), "e.json", &explicit));
    assert_eq!(a.status.code(), Some(0));
    assert!(a.stdout == b.stdout, "explicit and family reports differ");

    // the JSON echo of a config reproduces the same report
    let doc: Value = serde_json::from_slice(
        &run(
            &["check", "--format", "json"],
            &write_config(dir.path(), "e2.json", &explicit),
        )
        .stdout,
    )
    .unwrap();
    let echoed = serde_json::to_string(&doc["metadata"]["config"]).unwrap();
    let c = run(
        &["check", "--format", "csv"],
        &write_config(dir.path(), "echo.json", &echoed),
    );
    assert!(
        c.stdout == b.stdout,
        "echoed config gives a different report"
    );
}

#[test]
fn riesz_conditions_require_riesz_pair() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "ta.json",
        &CESARO_16
            .replace(
                r#""matrix_b": {"kind": "cesaro"}"#,
                r#""matrix_b": {"kind": "identity"}"#,
            )
            .replace("\"N\": 16", "\"N\": 16, \"conditions\": [\"TA_a\"]"),
    );
    let out = run(&["check"], &cfg);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("conditions"));
}
