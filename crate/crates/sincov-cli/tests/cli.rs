//! End-to-end tests of the `sincov` binary: report schema, artifact
//! plumbing, exit codes, format handling, and cross-command pipelines.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sincov() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sincov"))
}

fn run(args: &[&str]) -> Output {
    sincov().args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    sincov()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).expect("fixture write");
    path.to_str().expect("utf-8 path").to_owned()
}

/// A 2x2 positive matrix violating the upper product law (and not an
/// equation solution): direct entry 1 exceeds the product 3 * 0.2.
const UPPER_VIOLATOR: &str = ",a,b\na,1,3\nb,0.2,1\n";

#[test]
fn report_envelope_has_the_common_schema() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "v.csv", UPPER_VIOLATOR);
    let out = run(&["validate", "--in", &g, "--law", "mult-ineq"]);
    let report = stdout_json(&out);
    assert_eq!(report["command"], "validate");
    assert_eq!(report["input"], Value::String(g));
    assert_eq!(report["tolerance"]["rel"], 1e-9);
    assert_eq!(report["tolerance"]["zero_tol"], 1e-12);
    assert_eq!(report["tolerance"]["exact"], false);
    assert!(report["version"].is_string());
    assert_eq!(report["result"]["pass"], false);
    assert_eq!(report["result"]["law"], "mult-ineq");
    // Violations are named by label, not by index.
    let first = &report["result"]["violations"][0];
    assert!(first["x"].is_string());
    assert_eq!(code(&out), 1);
}

#[test]
fn report_only_commands_write_the_report_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "v.csv", UPPER_VIOLATOR);
    let rep_path = dir.path().join("report.json");
    let out = run(&[
        "validate",
        "--in",
        &g,
        "--law",
        "reverse-ineq",
        "--out",
        rep_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr_text(&out));
    assert!(out.stdout.is_empty(), "report went to the file instead");
    let text = std::fs::read_to_string(&rep_path).unwrap();
    let report: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["command"], "validate");
    assert_eq!(report["result"]["pass"], true);
}

#[test]
fn artifact_commands_write_the_artifact_and_print_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let inst_path = dir.path().join("g.json");
    let out = run(&[
        "generate",
        "--kind",
        "ratio",
        "--n",
        "4",
        "--seed",
        "11",
        "--out",
        inst_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["command"], "generate");
    assert_eq!(report["result"]["kind"], "ratio");
    assert_eq!(report["result"]["n"], 4);
    assert_eq!(report["result"]["seed"], 11);
    assert!(report["result"]["instance"]["matrix"].is_array());
    // The artifact file is a loadable instance, not a report.
    let artifact: Value =
        serde_json::from_str(&std::fs::read_to_string(&inst_path).unwrap()).unwrap();
    assert_eq!(artifact["mode"], "multiplicative");
    assert_eq!(artifact["labels"].as_array().unwrap().len(), 4);
    assert!(artifact.get("command").is_none());
}

#[test]
fn csv_artifacts_load_back() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("g.csv");
    let out = run(&[
        "generate",
        "--kind",
        "bounded:c=2",
        "--n",
        "3",
        "--seed",
        "5",
        "--format",
        "csv",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert!(text.starts_with(",x0,x1,x2"), "header: {text}");
    let out = run(&[
        "validate",
        "--in",
        csv_path.to_str().unwrap(),
        "--law",
        "mult-ineq",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr_text(&out));
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let violator = write(d, "v.csv", UPPER_VIOLATOR);
    let zeros_bad = write(d, "z.csv", ",a,b\na,0,1\nb,1,0\n");
    let bad_json = write(d, "bad.json", "{\n  \"labels\": [,]\n}");
    let bad_cell = write(d, "bad.csv", ",a\na,oops\n");

    // Success paths exit 0.
    let ok = run(&["generate", "--kind", "ratio", "--n", "2", "--seed", "0"]);
    assert_eq!(code(&ok), 0);

    // Outcome failures exit 1.
    assert_eq!(
        code(&run(&["validate", "--in", &violator, "--law", "mult-ineq"])),
        1
    );
    assert_eq!(code(&run(&["solve-eq", "--in", &violator])), 1);
    assert_eq!(code(&run(&["zeros", "--in", &zeros_bad])), 1);

    // Usage and input errors exit 2.
    assert_eq!(
        code(&run(&["validate", "--in", &violator, "--law", "nonsense"])),
        2
    );
    assert_eq!(
        code(&run(&["validate", "--in", "missing.csv", "--law", "mult-eq"])),
        2
    );
    assert_eq!(
        code(&run(&["validate", "--in", &bad_json, "--law", "mult-eq"])),
        2
    );
    assert_eq!(
        code(&run(&["validate", "--in", &bad_cell, "--law", "mult-eq"])),
        2
    );
    assert_eq!(code(&run(&["oracle", "--in", &violator, "--claim", "nope"])), 2);
    assert_eq!(code(&run(&["validate", "--in", &violator, "--wat"])), 2);
    assert_eq!(code(&run(&["generate", "--kind", "wat", "--n", "2"])), 2);
    assert_eq!(code(&run(&["bench", "--n", "1"])), 2);
    assert_eq!(
        code(&run(&["extremal", "--in", &violator, "--x0", "a", "--y0", "zzz"])),
        2
    );

    // Parse diagnostics carry positions.
    let out = run(&["validate", "--in", &bad_json, "--law", "mult-eq"]);
    let err = stderr_text(&out);
    assert!(err.contains("line 2"), "{err}");
    let out = run(&["validate", "--in", &bad_cell, "--law", "mult-eq"]);
    let err = stderr_text(&out);
    assert!(err.contains("line 2") && err.contains("field 2"), "{err}");
}

#[test]
fn mode_conflicts_between_file_and_flag_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let out = run(&[
        "generate",
        "--kind",
        "ratio",
        "--n",
        "2",
        "--out",
        g.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&[
        "validate",
        "--in",
        g.to_str().unwrap(),
        "--law",
        "mult-eq",
        "--mode",
        "additive",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("declares mode"));
}

#[test]
fn negative_cycle_closure_reports_the_cycle_by_label() {
    let dir = tempfile::tempdir().unwrap();
    let neg = write(dir.path(), "neg.csv", ",p,q\np,0,-1\nq,-1,0\n");
    let out = run(&["closure", "--in", &neg, "--mode", "additive"]);
    assert_eq!(code(&out), 2);
    let err = stderr_text(&out);
    assert!(err.contains("closure unbounded"), "{err}");
    assert!(err.contains('p') && err.contains('q'), "{err}");
}

#[test]
fn bridge_round_trips_between_modes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let h = d.join("h.json");
    let g = d.join("g.json");
    let back = d.join("back.json");
    assert_eq!(
        code(&run(&[
            "generate",
            "--kind",
            "additive-potential",
            "--n",
            "4",
            "--seed",
            "3",
            "--out",
            h.to_str().unwrap(),
        ])),
        0
    );
    let out = run(&[
        "bridge",
        "--in",
        h.to_str().unwrap(),
        "--mode",
        "multiplicative",
        "--out",
        g.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr_text(&out));
    // The exp image of a triangle-valid instance is upper-law valid.
    assert_eq!(
        code(&run(&[
            "validate",
            "--in",
            g.to_str().unwrap(),
            "--law",
            "mult-ineq",
        ])),
        0
    );
    let out = run(&[
        "bridge",
        "--in",
        g.to_str().unwrap(),
        "--mode",
        "additive",
        "--out",
        back.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let a: Value = serde_json::from_str(&std::fs::read_to_string(&h).unwrap()).unwrap();
    let b: Value = serde_json::from_str(&std::fs::read_to_string(&back).unwrap()).unwrap();
    for (ra, rb) in a["matrix"]
        .as_array()
        .unwrap()
        .iter()
        .zip(b["matrix"].as_array().unwrap())
    {
        for (va, vb) in ra.as_array().unwrap().iter().zip(rb.as_array().unwrap()) {
            let (va, vb) = (va.as_f64().unwrap(), vb.as_f64().unwrap());
            assert!((va - vb).abs() <= 1e-12, "{va} vs {vb}");
        }
    }
}

#[test]
fn bridge_rejects_exact_mode() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.csv", ",a\na,0\n");
    let out = run(&[
        "bridge",
        "--in",
        &h,
        "--mode",
        "multiplicative",
        "--exact",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("float"), "{}", stderr_text(&out));
}

#[test]
fn quotient_merges_mutually_zero_points() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(
        dir.path(),
        "h.csv",
        ",a,b,c\na,0,0,1\nb,0,0,1\nc,1,1,0\n",
    );
    let reduced_path = dir.path().join("r.json");
    let out = run(&[
        "quotient",
        "--in",
        &h,
        "--mode",
        "additive",
        "--out",
        reduced_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr_text(&out));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["class_count"], 2);
    assert_eq!(report["result"]["classes"][0], serde_json::json!(["a", "b"]));
    assert_eq!(report["result"]["classes"][1], serde_json::json!(["c"]));
    let reduced: Value =
        serde_json::from_str(&std::fs::read_to_string(&reduced_path).unwrap()).unwrap();
    assert_eq!(reduced["labels"], serde_json::json!(["a", "c"]));
    assert_eq!(reduced["mode"], "additive");
}

#[test]
fn represent_then_reconstruct_is_byte_identical_in_exact_mode() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let g = d.join("g.json");
    let fam = d.join("fam.json");
    let r = d.join("r.json");
    assert_eq!(
        code(&run(&[
            "generate",
            "--kind",
            "via-closure",
            "--n",
            "5",
            "--seed",
            "9",
            "--exact",
            "--out",
            g.to_str().unwrap(),
        ])),
        0
    );
    let out = run(&[
        "represent",
        "--in",
        g.to_str().unwrap(),
        "--exact",
        "--out",
        fam.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr_text(&out));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["members"], 5);
    let out = run(&[
        "reconstruct",
        "--in",
        fam.to_str().unwrap(),
        "--exact",
        "--out",
        r.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr_text(&out));
    let original = std::fs::read(&g).unwrap();
    let rebuilt = std::fs::read(&r).unwrap();
    assert_eq!(original, rebuilt, "exact round trip must be byte-identical");
}

#[test]
fn solve_eq_recovers_the_generating_potential() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    assert_eq!(
        code(&run(&[
            "generate",
            "--kind",
            "ratio",
            "--n",
            "5",
            "--seed",
            "2",
            "--out",
            g.to_str().unwrap(),
        ])),
        0
    );
    let out = run(&["solve-eq", "--in", g.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["result"]["kind"], "ratio");
    assert_eq!(report["result"]["potential"].as_array().unwrap().len(), 5);
}

#[test]
fn tilde_produces_a_unit_diagonal_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.csv", UPPER_VIOLATOR);
    let t = dir.path().join("t.json");
    let out = run(&["tilde", "--in", &g, "--out", t.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr_text(&out));
    let artifact: Value = serde_json::from_str(&std::fs::read_to_string(&t).unwrap()).unwrap();
    let m = artifact["matrix"].as_array().unwrap();
    assert_eq!(m[0].as_array().unwrap()[0], 1.0);
    assert_eq!(m[1].as_array().unwrap()[1], 1.0);
}

#[test]
fn audit_reports_structure_flags() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.csv", ",a,b\na,2,3\nb,3,4\n");
    let out = run(&["audit", "--in", &g]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["result"]["not_a_solution"], false);
    assert_eq!(report["result"]["has_zero"], false);
    assert_eq!(report["result"]["diag_min"], 2.0);
}

#[test]
fn oracle_command_reports_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    assert_eq!(
        code(&run(&[
            "generate",
            "--kind",
            "ratio",
            "--n",
            "4",
            "--seed",
            "1",
            "--out",
            g.to_str().unwrap(),
        ])),
        0
    );
    let out = run(&["oracle", "--in", g.to_str().unwrap(), "--claim", "remark1"]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["result"]["verdict"], "holds");
    assert_eq!(report["result"]["witness"], Value::Null);
    // A hypothesis mismatch is not a failure.
    let out = run(&["oracle", "--in", g.to_str().unwrap(), "--claim", "repH"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["result"]["verdict"], "hypothesis-not-met");
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "generate",
        "--kind",
        "additive-potential",
        "--n",
        "6",
        "--seed",
        "42",
    ];
    let a = run_in(dir.path(), &args);
    let b = run_in(dir.path(), &args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parallel_kernel_respects_sincov_threads_and_matches_plain() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let h = d.join("h.json");
    assert_eq!(
        code(&run(&[
            "generate",
            "--kind",
            "additive-potential",
            "--n",
            "32",
            "--seed",
            "8",
            "--out",
            h.to_str().unwrap(),
        ])),
        0
    );
    let plain = d.join("plain.json");
    let par = d.join("par.json");
    let out = run(&[
        "closure",
        "--in",
        h.to_str().unwrap(),
        "--kernel",
        "plain",
        "--out",
        plain.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr_text(&out));
    let out = sincov()
        .env("SINCOV_THREADS", "2")
        .args([
            "closure",
            "--in",
            h.to_str().unwrap(),
            "--kernel",
            "parallel",
            "--out",
            par.to_str().unwrap(),
        ])
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 0, "{}", stderr_text(&out));
    assert_eq!(
        std::fs::read(&plain).unwrap(),
        std::fs::read(&par).unwrap(),
        "parallel kernel must be bit-identical to plain"
    );
    // A malformed thread cap is a usage error.
    let out = sincov()
        .env("SINCOV_THREADS", "abc")
        .args(["bench", "--n", "2", "--reps", "1"])
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 2);
}

#[test]
fn bench_reports_timings_and_bit_identity() {
    let out = run(&["bench", "--n", "16", "--reps", "2", "--seed", "4"]);
    assert_eq!(code(&out), 0, "{}", stderr_text(&out));
    let report = stdout_json(&out);
    assert_eq!(report["command"], "bench");
    assert_eq!(report["result"]["identical"], true);
    assert!(report["result"]["plain_median_s"].as_f64().unwrap() >= 0.0);
    assert!(report["result"]["blocked_gops"].as_f64().unwrap() > 0.0);
}

#[test]
fn invert_swaps_the_one_sided_laws() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let g = d.join("g.json");
    let f = d.join("f.json");
    assert_eq!(
        code(&run(&[
            "generate",
            "--kind",
            "bounded:c=2",
            "--n",
            "4",
            "--seed",
            "6",
            "--out",
            g.to_str().unwrap(),
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "invert",
            "--in",
            g.to_str().unwrap(),
            "--out",
            f.to_str().unwrap(),
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "validate",
            "--in",
            f.to_str().unwrap(),
            "--law",
            "reverse-ineq",
        ])),
        0
    );
}
