//! End-to-end checks of the command-line interface: exit codes, record
//! shapes, and bit-reproducibility of seeded output.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_incidence-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn incidence-lab")
}

fn stdout_lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8(out.stdout.clone())
        .expect("utf8 stdout")
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

#[test]
fn verify_spectrum_emits_one_record_per_side() {
    let out = run(&["verify-spectrum", "--q", "4", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["side"], "points");
    assert_eq!(lines[1]["side"], "polys");
    for l in &lines {
        assert_eq!(l["ok"], true);
        assert_eq!(l["Q"], 4);
        assert_eq!(l["characters_checked"], 16);
    }
}

#[test]
fn single_side_flag_narrows_output() {
    let out = run(&["verify-spectrum", "--q", "3", "--k", "2", "--side", "polys"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["side"], "polys");
}

#[test]
fn non_prime_power_field_size_is_a_usage_error() {
    let out = run(&["verify-spectrum", "--q", "6", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("prime power"), "stderr: {err}");
}

#[test]
fn sweep_is_bit_reproducible() {
    let args = [
        "sweep", "--q", "5", "--k", "2", "--ell", "5", "--points", "10", "--trials", "20",
        "--seed", "3",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines = stdout_lines(&a);
    assert_eq!(lines.len(), 20);
    for (cell, l) in lines.iter().enumerate() {
        assert_eq!(l["cell"], cell as u64);
        assert_eq!(l["seed"], 3);
        assert_eq!(l["ok_tight"], true);
        assert_eq!(l["ok_cs"], true);
    }
}

#[test]
fn sweep_writes_to_requested_file() {
    let path = std::env::temp_dir().join(format!("incidence_lab_cli_{}.jsonl", std::process::id()));
    let path_str = path.to_str().unwrap();
    let out = run(&[
        "sweep", "--q", "3", "--k", "2", "--ell", "3", "--points", "4", "--trials", "3",
        "--out", path_str,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).expect("read out file");
    assert_eq!(body.lines().count(), 3);
    std::fs::remove_file(&path).ok();
}

#[test]
fn bounds_table_csv_rows_have_fixed_arity() {
    let out = run(&["bounds-table", "--q", "9", "--k", "3", "--ell", "10,20", "--points", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let body = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = body.lines().collect();
    assert_eq!(rows.len(), 3);
    let width = rows[0].split(',').count();
    for row in &rows {
        assert_eq!(row.split(',').count(), width, "row: {row}");
    }
    assert_eq!(rows[1], "9,3,10,20,200,9,46400,9,7800,1,,,,");
}

#[test]
fn bounds_table_jsonl_round_trips() {
    let out = run(&[
        "bounds-table", "--q", "5", "--k", "2", "--ell", "4", "--points", "8", "--format", "jsonl",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["main_num"], 32);
    assert_eq!(lines[0]["main_den"], 5);
    assert_eq!(lines[0]["vinh_sq_num"], 160);
}

#[test]
fn certify_random_is_reproducible_and_passes() {
    let args = [
        "certify-rs", "--q", "7", "--k", "2", "--eps", "1/4", "--mode", "random", "--trials",
        "50", "--seed", "1",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines = stdout_lines(&a);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["violated"], false);
    assert_eq!(lines[0]["ell"], 4);
    assert_eq!(lines[0]["lists_checked"], 50);
}

#[test]
fn certify_flags_a_genuinely_undersized_list_bound() {
    let out = run(&[
        "certify-rs", "--q", "7", "--k", "2", "--eps", "1/100", "--ell", "1", "--mode",
        "exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["violated"], true);
    assert_eq!(lines[0]["min_avg_radius_num"], 3);
    assert_eq!(lines[0]["min_avg_radius_den"], 7);
}

#[test]
fn malformed_eps_is_a_usage_error() {
    let out = run(&["certify-rs", "--q", "7", "--k", "2", "--eps", "0.25"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn size_cap_env_var_gates_large_configurations() {
    let out = bin()
        .args(["verify-spectrum", "--q", "9", "--k", "3"])
        .env("INCIDENCE_LAB_SIZE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("size cap"), "stderr: {err}");

    let out = bin()
        .args(["verify-spectrum", "--q", "3", "--k", "2"])
        .env("INCIDENCE_LAB_SIZE_CAP", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("INCIDENCE_LAB_SIZE_CAP"), "stderr: {err}");
}

#[test]
fn oversized_sample_request_is_a_usage_error() {
    let out = run(&["sweep", "--q", "3", "--k", "2", "--ell", "100", "--points", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_dft_reports_matching_transforms() {
    let out = run(&["bench-dft", "--q", "4", "--d", "2", "--trials", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 2);
    for l in &lines {
        assert_eq!(l["equal"], true);
        assert!(l["fast_ns"].is_u64() || l["fast_ns"].is_number());
        assert!(l["naive_ns"].is_number());
    }
}
