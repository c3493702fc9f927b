use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/spin32")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn qprop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qprop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn valuate(ket: &str, extra: &[&str]) -> Value {
    let state = fixture(ket);
    let proj = fixture("projector_Y32.json");
    let mut args = vec!["valuate", "--state", &state, "--projector", &proj];
    args.extend_from_slice(extra);
    json(&qprop(&args))
}

#[test]
fn valuate_fixture_truth_table() {
    let x = valuate("ket_X32.json", &[]);
    assert_eq!(x["truth"], "gap");
    assert_eq!(x["state"], "|X+3/2>");
    assert_eq!(x["proposition"], "Y+3/2");
    assert_eq!(x["semantics"], "SV");
    assert!((x["probability"].as_f64().unwrap() - 0.125).abs() < 1e-12);
    assert_eq!(valuate("ket_Y32.json", &[])["truth"], "true");
    assert_eq!(valuate("ket_Y12.json", &[])["truth"], "false");
}

#[test]
fn valuate_flags_change_method_and_semantics() {
    let ql = valuate("ket_X32.json", &["--semantics", "ql"]);
    assert_eq!(ql["truth"], "false");
    assert_eq!(ql["semantics"], "QL");
    let lin = valuate("ket_X32.json", &["--method", "linsys"]);
    assert_eq!(lin["truth"], "gap");
    assert_eq!(lin["method"], "linsys");
    assert_eq!(lin["config"]["method"], "linsys");
    let y = valuate(
        "ket_Y32.json",
        &["--method", "linsys", "--tol-residual", "1e-8"],
    );
    assert_eq!(y["truth"], "true");
    assert_eq!(y["config"]["tol_residual"], 1e-8);
}

#[test]
fn malformed_input_exits_2_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"rows": 4, "cols": 1, "data": [[1, 0], [0, 0], [0, "x"], [0, 0]]}"#,
    )
    .unwrap();
    let proj = fixture("projector_Y32.json");
    let out = qprop(&[
        "valuate",
        "--state",
        bad.to_str().unwrap(),
        "--projector",
        &proj,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("data[2][1]"), "{}", stderr(&out));

    std::fs::write(&bad, r#"{"rows": 4, "data": []}"#).unwrap();
    let out = qprop(&[
        "valuate",
        "--state",
        bad.to_str().unwrap(),
        "--projector",
        &proj,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("`cols`"), "{}", stderr(&out));

    std::fs::write(&bad, "{not json").unwrap();
    let out = qprop(&[
        "valuate",
        "--state",
        bad.to_str().unwrap(),
        "--projector",
        &proj,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_projector_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("p.json");
    std::fs::write(
        &bad,
        r#"{"rows": 2, "cols": 2, "data": [[1, 0], [1, 0], [0, 0], [0, 0]], "validated": true}"#,
    )
    .unwrap();
    let state = dir.path().join("s.json");
    std::fs::write(
        &state,
        r#"{"rows": 2, "cols": 1, "data": [[1, 0], [0, 0]]}"#,
    )
    .unwrap();
    let out = qprop(&[
        "valuate",
        "--state",
        state.to_str().unwrap(),
        "--projector",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("projector"), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qprop(&[]).status.code(), Some(2));
    assert_eq!(qprop(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        qprop(&["demo-spin32", "--format", "xml"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qprop(&["demo-spin32", "--tol-rank", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qprop(&["demo-spin32", "--tol-residual", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn demo_reports_the_worked_example() {
    let r = json(&qprop(&["demo-spin32"]));
    assert_eq!(r["passed"], true);
    let s = 1.0 / (8.0 * 2f64.sqrt());
    let k = r["kernel_solution"]["solution"].as_array().unwrap();
    let want = [[0.0, -3f64.sqrt() * s], [2.0 * s, 0.0], [0.0, s]];
    for (got, want) in k.iter().zip(want) {
        assert!((got[0].as_f64().unwrap() - want[0]).abs() < 1e-9);
        assert!((got[1].as_f64().unwrap() - want[1]).abs() < 1e-9);
    }
    let x = &r["range_solution"]["solution"][0];
    assert!(x[0].as_f64().unwrap().abs() < 1e-9);
    assert!((x[1].as_f64().unwrap() - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-9);
    assert_eq!(r["distributivity"]["lhs"], 1);
    assert_eq!(r["distributivity"]["rhs"], 0);
    assert_eq!(r["states"][2]["truth_sv"], "gap");
    assert_eq!(r["states"][2]["membership_linsys"], "neither");
}

#[test]
fn demo_check_failure_exits_1() {
    // a residual tolerance this loose puts |X+3/2> in the kernel
    let out = qprop(&["demo-spin32", "--tol-residual", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["passed"], false);
}

#[test]
fn demo_table_format() {
    let out = qprop(&["demo-spin32", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[distributivity]"));
    assert!(text.contains("PASS distributivity fails"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn sample_gap_fraction_is_one() {
    for n in ["4", "2"] {
        let r = json(&qprop(&[
            "sample", "-n", n, "-r", "1", "-t", "1000", "--seed", "7",
        ]));
        let run = &r["runs"][0];
        assert_eq!(run["gap_fraction"], 1.0);
        assert_eq!(run["gap"], 1000);
        assert_eq!(run["seed"], 7);
        assert_eq!(r["config"]["seed"], 7);
    }
}

#[test]
fn sample_trivial_rank_exits_2() {
    assert_eq!(
        qprop(&["sample", "-n", "4", "-r", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qprop(&["sample", "-n", "4", "-r", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(qprop(&["sample", "-n", "0"]).status.code(), Some(2));
}

#[test]
fn sample_sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let out = qprop(&[
        "sample",
        "-n",
        "3,4",
        "-r",
        "1,2",
        "-t",
        "50",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    let r = json(&out);
    assert_eq!(r["runs"].as_array().unwrap().len(), 4);
    assert_eq!(
        std::fs::read_to_string(&csv).unwrap(),
        "dimension,rank,gap_fraction\n3,1,1.0\n3,2,1.0\n4,1,1.0\n4,2,1.0\n"
    );
}

fn logic(formula: &str, extra: &[&str]) -> Output {
    let state = fixture("ket_X32.json");
    let atoms = fixture("atoms.json");
    let mut args = vec!["logic", formula, "--state", &state, "--atoms", &atoms];
    args.extend_from_slice(extra);
    qprop(&args)
}

#[test]
fn logic_examples() {
    assert_eq!(json(&logic("P | !P", &[]))["truth"], "true");
    assert_eq!(json(&logic("P & !P", &[]))["truth"], "false");
    assert_eq!(json(&logic("P", &[]))["truth"], "gap");
    assert_eq!(json(&logic("P", &["--semantics", "ql"]))["truth"], "false");
    let lhs = json(&logic("Q & (P | !P)", &[]));
    let rhs = json(&logic("(Q & P) | (Q & !P)", &[]));
    assert_eq!(lhs["truth"], "true");
    assert_eq!(lhs["subspace_dim"], 1);
    assert_eq!(rhs["truth"], "false");
    assert_eq!(rhs["subspace_dim"], 0);
    assert_eq!(
        json(&logic("Q & (P | !P)", &["--method", "linsys"]))["truth"],
        "true"
    );
}

#[test]
fn logic_errors_exit_2() {
    let out = logic("P & R", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown atom `R`"));
    let out = logic("P & (Q", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(logic("P Q", &[]).status.code(), Some(2));
}

#[test]
fn logic_accepts_inline_atoms() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("atoms.json");
    let y = std::fs::read_to_string(fixtures().join("projector_Y32.json")).unwrap();
    std::fs::write(&manifest, format!(r#"{{"Y+3/2": {y}}}"#)).unwrap();
    let state = fixture("ket_Y32.json");
    let out = qprop(&[
        "logic",
        "!Y+3/2",
        "--state",
        &state,
        "--atoms",
        manifest.to_str().unwrap(),
    ]);
    let r = json(&out);
    assert_eq!(r["truth"], "false");
    assert_eq!(r["formula"], "!Y+3/2");
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let runs = [
        vec!["demo-spin32"],
        vec!["sample", "-n", "5", "-r", "2", "-t", "300", "--seed", "11"],
    ];
    for args in runs {
        let a = qprop(&args);
        let b = qprop(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn fixtures_export_matches_committed_files() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("spin32");
    let r = json(&qprop(&[
        "fixtures",
        "export",
        "--dir",
        target.to_str().unwrap(),
    ]));
    let files = r["files"].as_array().unwrap();
    assert_eq!(files.len(), 10);
    for f in files {
        let name = f.as_str().unwrap();
        assert_eq!(
            std::fs::read_to_string(target.join(name)).unwrap(),
            std::fs::read_to_string(fixtures().join(name)).unwrap(),
            "{name}"
        );
    }
}
