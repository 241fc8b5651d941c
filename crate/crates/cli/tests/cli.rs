//! Fast end-to-end checks of the binary at coarse resolutions.

use std::process::Command;

use perfrank_cli::{compute_table, OutputFormat, ScoreChoice, TableOptions, TauOptions};
use serde_json::Value;

fn run(args: &[&str]) -> (String, String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_perfrank"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
        output.status.code().unwrap_or(-1),
    )
}

#[test]
fn table1_check_passes_at_coarse_resolution_for_linear_scores() {
    // Linear-score verdicts do not depend on the resolution.
    for name in ["accuracy", "tpr", "error_rate", "ptn"] {
        let (stdout, _, code) = run(&[
            "table1",
            "--only",
            name,
            "--resolution",
            "8",
            "--check",
            "--format",
            "csv",
        ]);
        assert_eq!(code, 0, "{name}: {stdout}");
        assert_eq!(stdout.lines().count(), 4, "header plus three constraint rows");
    }
}

#[test]
fn table1_single_row_output() {
    let (stdout, _, code) = run(&["table1", "--only", "mcc", "--resolution", "8"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = stdout.lines().filter(|l| l.contains("| mcc |")).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].contains("V X X"), "{stdout}");
}

#[test]
fn audit_expression_matches_builtin() {
    let (expr_out, _, expr_code) = run(&[
        "audit",
        "--expr",
        "ptp/(ptp+pfp)",
        "--resolution",
        "8",
        "--format",
        "json",
    ]);
    let (builtin_out, _, builtin_code) = run(&[
        "audit",
        "--score",
        "ppv",
        "--resolution",
        "8",
        "--format",
        "json",
    ]);
    assert_eq!((expr_code, builtin_code), (0, 0));
    let expr_json: Value = serde_json::from_str(&expr_out).unwrap();
    let builtin_json: Value = serde_json::from_str(&builtin_out).unwrap();
    for key in ["test1", "test2", "test3"] {
        assert_eq!(expr_json[key], builtin_json[key], "{key}");
    }
}

#[test]
fn audit_finds_the_fmi_violation() {
    let (stdout, _, code) = run(&[
        "audit",
        "--expr",
        "sqrt((ptp/(pfp+ptp))*(ptp/(pfn+ptp)))",
        "--resolution",
        "8",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    let below_ok = doc["test3"].as_bool().unwrap();
    let above_ok = doc["test2"].as_bool().unwrap();
    assert!(!(below_ok && above_ok), "{stdout}");
    assert!(doc["counterexample"].is_object());
}

#[test]
fn audit_odds_ratio_at_balanced_priors() {
    let (stdout, _, code) = run(&[
        "audit",
        "--score",
        "odds_ratio",
        "--prior",
        "0.5",
        "--resolution",
        "16",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["test1"], Value::Bool(true));
    assert_eq!(doc["test2"], Value::Bool(false));
    assert_eq!(doc["test3"], Value::Bool(false));
}

#[test]
fn tau_analytic_shortcuts_through_the_cli() {
    let (stdout, _, code) = run(&[
        "tau",
        "--score",
        "f1",
        "--objective",
        "max",
        "--resolution",
        "8",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["tau"].as_f64(), Some(1.0));
    assert_eq!(doc["analytic"], Value::Bool(true));
    let importance: Vec<f64> = doc["importance"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(importance, vec![0.0, 0.5, 0.5, 1.0]);

    let (stdout, _, code) = run(&[
        "tau",
        "--score",
        "tnr",
        "--objective",
        "min",
        "--resolution",
        "8",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    let tau = doc["tau"].as_f64().unwrap();
    assert!(tau.abs() <= 0.1, "TNR minimum should sit near zero, got {tau}");
}

#[test]
fn balanced_accuracy_fixed_prior_maximum_is_analytic() {
    let (stdout, _, code) = run(&[
        "tau",
        "--score",
        "balanced_accuracy",
        "--prior",
        "0.2",
        "--objective",
        "max",
        "--resolution",
        "20",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["tau"].as_f64(), Some(1.0));
    assert_eq!(doc["analytic"], Value::Bool(true));
}

#[test]
fn rank_command_handles_ties_and_domain_gaps() {
    let dir = std::env::temp_dir().join("perfrank-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("entities.csv");
    std::fs::write(
        &path,
        "id,p_tn,p_fp,p_fn,p_tp\n\
         a,0.45,0.05,0.05,0.45\n\
         b,0.4,0.1,0.1,0.4\n\
         c,0.4,0.1,0.1,0.4\n",
    )
    .unwrap();
    let (stdout, _, code) = run(&[
        "rank",
        "--input",
        path.to_str().unwrap(),
        "--score",
        "accuracy",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    let entities = doc["entities"].as_array().unwrap();
    assert_eq!(entities[0]["id"], "a");
    assert_eq!(entities[0]["lower"], Value::from(1u64));
    assert_eq!(entities[1]["lower"], Value::from(2u64));
    assert_eq!(entities[1]["upper"], Value::from(3u64));

    // An out-of-domain row is flagged incomparable with bounds (1, 1).
    let path = dir.join("partial.csv");
    std::fs::write(
        &path,
        "id,p_tn,p_fp,p_fn,p_tp\n\
         in,0,0,0.5,0.5\n\
         out,0.5,0.5,0,0\n",
    )
    .unwrap();
    let (stdout, _, code) = run(&[
        "rank",
        "--input",
        path.to_str().unwrap(),
        "--score",
        "tpr",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    let out_row = doc["entities"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["id"] == "out")
        .unwrap();
    assert_eq!(out_row["incomparable"], Value::Bool(true));
    assert_eq!(out_row["lower"], Value::from(1u64));
    assert_eq!(out_row["upper"], Value::from(1u64));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = std::env::temp_dir().join("perfrank-cli-test");
    std::fs::create_dir_all(&dir).unwrap();

    let (_, stderr, code) = run(&["audit", "--expr", "ptn + (", "--resolution", "4"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("parse error"), "{stderr}");
    assert!(stderr.contains("byte"), "position missing: {stderr}");

    let path = dir.join("broken.csv");
    std::fs::write(
        &path,
        "id,p_tn,p_fp,p_fn,p_tp\nbad,0.9,0.4,0.1,0.1\nworse,x,0,0,1\n",
    )
    .unwrap();
    let (_, stderr, code) = run(&[
        "rank",
        "--input",
        path.to_str().unwrap(),
        "--score",
        "accuracy",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 2"), "{stderr}");
    assert!(stderr.contains("line 3"), "{stderr}");

    let (_, _, code) = run(&["audit", "--score", "nonsense", "--resolution", "4"]);
    assert_eq!(code, 2);

    let (_, _, code) = run(&["tau", "--score", "f1", "--objective", "max", "--prior", "1.5"]);
    assert_eq!(code, 2);
}

#[test]
fn grid_csv_has_expected_shape() {
    let (stdout, _, code) = run(&["grid", "--resolution", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "p_tn,p_fp,p_fn,p_tp");
    assert_eq!(lines.len(), 1 + 10);

    let (stdout, _, code) = run(&["grid", "--prior", "0.2", "--resolution", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 1 + 9);
}

#[test]
fn json_output_round_trips_byte_identically() {
    let options = TableOptions {
        resolution: Some(8),
        seed: 3,
        only: Some("f1".into()),
        check: false,
    };
    let output = perfrank_cli::run_table1(&options, OutputFormat::Json).unwrap();
    let parsed: Value = serde_json::from_str(&output.text).unwrap();
    let rerendered = perfrank_cli::json::render(&parsed) + "\n";
    assert_eq!(output.text, rerendered);
}

#[test]
fn library_level_table_respects_only_filter() {
    let options = TableOptions {
        resolution: Some(4),
        seed: 0,
        only: Some("accuracy".into()),
        check: false,
    };
    let rows = compute_table(&options).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].name, "accuracy");
    assert_eq!(rows[0].cells.len(), 3);
}

#[test]
fn tau_options_drive_the_empirical_search_for_expressions() {
    let options = TauOptions {
        score: ScoreChoice::Expression("1 - ptp - ptn".into()),
        constraint: perfrank::ConstraintSet::Unconstrained,
        objective: perfrank::Objective::Min,
        resolution: Some(8),
        seed: 0,
    };
    let output = perfrank_cli::run_tau(&options, OutputFormat::Json).unwrap();
    let doc: Value = serde_json::from_str(&output.text).unwrap();
    // The expression is the error rate: its minimum correlation is exactly
    // the mirrored self-correlation.
    assert_eq!(doc["tau"].as_f64(), Some(-1.0));
    assert_eq!(doc["analytic"], Value::Bool(false));
}
