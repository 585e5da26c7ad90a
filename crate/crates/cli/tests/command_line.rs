//! Binary-level tests: the command surface, exit codes, output formats,
//! and the report round-trip guarantee. Scenario inputs come from the
//! checked-in `scenarios/` directory so the samples stay exercised.

use std::path::PathBuf;
use std::process::{Command, Output};

fn scenario_path(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../scenarios");
    p.push(name);
    p.to_str().expect("ascii path").to_string()
}

/// Fresh command with the seed env var cleared, so ambient environment
/// cannot leak into precedence tests.
fn cmd() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cbdiscrim"));
    c.env_remove("CBDISCRIM_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    cmd().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn temp_file(tag: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("cbdiscrim_{tag}_{}.json", std::process::id()));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

#[test]
fn discriminate_reports_perfect_cross_type_pair() {
    let out = run(&["discriminate", &scenario_path("cross_type.json"), "--output", "json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let report = &doc["report"];
    assert_eq!(report["p_err_unassisted"].as_f64().unwrap(), 0.0);
    assert!(report["p_err_assisted"].as_f64().unwrap() <= 1e-7);
    assert_eq!(report["bound"].as_f64().unwrap(), 0.0);
}

#[test]
fn discriminate_bound_matches_mixing_family_closed_form() {
    let out = run(&["discriminate", &scenario_path("type1_vs_mixing.json"), "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["report"]["p_err_unassisted"].as_f64().unwrap(), 0.0);
    assert_eq!(doc["report"]["bound"].as_f64().unwrap(), 0.25);
}

#[test]
fn report_roundtrip_reproduces_identical_numbers() {
    let out = run(&["discriminate", &scenario_path("opposed_mixing_pair.json"), "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();

    // The embedded scenario carries the fully resolved optimizer config;
    // re-running it must reproduce every number bit for bit.
    let embedded = serde_json::to_string_pretty(&doc["scenario"]).unwrap();
    let path = temp_file("roundtrip", &embedded);
    let again = run(&["discriminate", path.to_str().unwrap(), "--output", "json"]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(again.status.code(), Some(0));
    let doc2: serde_json::Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(doc["report"], doc2["report"]);
    assert_eq!(doc["scenario"], doc2["scenario"]);
}

#[test]
fn discriminate_csv_is_one_header_and_one_row() {
    let out = run(&["discriminate", &scenario_path("damping_vs_type1.json"), "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("p_err_unassisted,"));
    assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
    assert!(!text.contains('\r'));
}

#[test]
fn discriminate_text_names_the_channels() {
    let out = run(&["discriminate", &scenario_path("type1_vs_mixing.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("channel_a = cbc1"));
    assert!(text.contains("channel_b = cbc3(phi"));
    assert!(text.contains("p_err_unassisted"));
}

#[test]
fn sweep_bound_column_tracks_the_prior() {
    let out = run(&["sweep", &scenario_path("prior_sweep.json"), "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[0], "p1,p_err_unassisted,p_err_assisted,bound,enhancement,sum_singulars,formula_sum");
    for row in &lines[1..] {
        let cols: Vec<&str> = row.split(',').collect();
        let p1: f64 = cols[0].parse().unwrap();
        let bound: f64 = cols[3].parse().unwrap();
        let sum: f64 = cols[5].parse().unwrap();
        let formula: f64 = cols[6].parse().unwrap();
        assert!((bound - (0.25 - 0.25 * (2.0 * p1 - 1.0).abs())).abs() <= 1e-12);
        assert!((sum - formula).abs() <= 1e-12);
    }
}

#[test]
fn sweep_accepts_a_mixing_angle_parameter() {
    let out = run(&["sweep", &scenario_path("mixing_phase_sweep.json"), "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 14);
    assert!(text.lines().next().unwrap().starts_with("b.phi,"));
}

#[test]
fn verify_paper_reports_failures_without_gating() {
    let out = run(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0), "the audit reports, it does not gate");
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(text.contains("FAIL-AS-PRINTED"));
    assert!(text.contains("overall: "));
}

#[test]
fn check_cbc_flags_the_mixing_family() {
    let out = run(&["check-cbc", &scenario_path("check_mixing.json"), "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["kind"].as_str().unwrap(), "cbc3");
    assert_eq!(doc["coherence_breaking"].as_bool().unwrap(), true);
    assert!(doc["cptp_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["discriminate", "/no/such/scenario.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: "));
}

#[test]
fn malformed_json_exits_two_with_location() {
    let path = temp_file("malformed", "{ \"v\": 1, \"p1\": ");
    let out = run(&["discriminate", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line"));
}

#[test]
fn unknown_sweep_parameter_lists_valid_names() {
    let spec = r#"{
        "v": 1,
        "scenario": {
            "v": 1,
            "p1": 0.5,
            "channel_a": { "kind": "cbc1" },
            "channel_b": { "kind": "cbc3", "phi": 0.3, "xi": 0.0 }
        },
        "sweep": [{ "name": "a.theta", "start": 0.0, "stop": 1.0, "steps": 3 }]
    }"#;
    let path = temp_file("unknown_param", spec);
    let out = run(&["sweep", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("a.theta"));
    assert!(err.contains("valid names"));
    assert!(err.contains("b.xi"));
}

#[test]
fn seed_precedence_is_flag_env_default() {
    let seed_of = |out: &Output| -> u64 {
        let doc: serde_json::Value = serde_json::from_str(&stdout(out)).unwrap();
        doc["scenario"]["optimizer"]["seed"].as_u64().unwrap()
    };
    let file = scenario_path("cross_type.json");

    let plain = run(&["discriminate", &file, "--output", "json"]);
    assert_eq!(seed_of(&plain), 42);

    let mut env_only = cmd();
    env_only.args(["discriminate", &file, "--output", "json"]).env("CBDISCRIM_SEED", "7");
    let env_out = env_only.output().unwrap();
    assert_eq!(env_out.status.code(), Some(0));
    assert_eq!(seed_of(&env_out), 7);

    let mut both = cmd();
    both.args(["discriminate", &file, "--output", "json", "--seed", "9"])
        .env("CBDISCRIM_SEED", "7");
    let both_out = both.output().unwrap();
    assert_eq!(both_out.status.code(), Some(0));
    assert_eq!(seed_of(&both_out), 9);
}

#[test]
fn garbage_seed_env_exits_two() {
    let mut c = cmd();
    c.args(["discriminate", &scenario_path("cross_type.json")]).env("CBDISCRIM_SEED", "banana");
    let out = c.output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("CBDISCRIM_SEED"));
}

#[test]
fn pauli_enhancement_scenario_sets_the_flag() {
    let out = run(&["discriminate", &scenario_path("pauli_enhancement.json"), "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let report = &doc["report"];
    assert_eq!(report["enhancement_flag"].as_bool().unwrap(), true);
    let pu = report["p_err_unassisted"].as_f64().unwrap();
    let pa = report["p_err_assisted"].as_f64().unwrap();
    assert!(pa < pu - 1e-6);
}
