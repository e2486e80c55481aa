//! End-to-end acceptance for the CLI: every worked-example fixture passes
//! parse -> command -> verify with exit 0 and PASS on all checks, and the
//! malformed fixtures exit 1 or 2 as specified.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_basicmat")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary spawns")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Run a command on a fixture, pipe the report through verify, and demand
/// exit 0 with no FAIL lines.
fn command_then_verify(dir: &tempfile::TempDir, label: &str, args: &[&str]) {
    let out = run(args);
    assert_eq!(
        exit_code(&out),
        0,
        "{label}: command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report_path = dir.path().join(format!("{label}.report"));
    std::fs::write(&report_path, &out.stdout).unwrap();
    let verify = run(&["verify", "--input", report_path.to_str().unwrap()]);
    let text = String::from_utf8_lossy(&verify.stdout);
    assert_eq!(
        exit_code(&verify),
        0,
        "{label}: verify failed:\n{text}"
    );
    assert!(!text.contains("FAIL"), "{label}: FAIL in verify output:\n{text}");
    assert!(text.contains("PASS"), "{label}: no PASS lines:\n{text}");
}

#[test]
fn criterion_11_fixtures_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();

    // idempotent decompositions (criteria 1 and 2)
    for name in ["e3x3", "e4x4"] {
        let path = fixture(&format!("{name}.mat"));
        command_then_verify(
            &dir,
            &format!("idem_{name}"),
            &["idem-decompose", "--input", path.to_str().unwrap()],
        );
    }

    // gate factorizations (criteria 3 and 4)
    for name in [
        "hadamard",
        "pauli_x",
        "pauli_y",
        "pauli_z",
        "phase_pi5",
        "swap",
        "cnot",
        "bell",
        "rotation_pi4",
        "sqrt_not",
        "sqrt_swap",
        "hadamard4",
    ] {
        let path = fixture(&format!("{name}.mat"));
        command_then_verify(
            &dir,
            &format!("factor_{name}"),
            &["factor", "--input", path.to_str().unwrap()],
        );
    }

    // square-root enumerations (criterion 5)
    for name in ["pauli_x", "swap", "cnot"] {
        let path = fixture(&format!("{name}.mat"));
        command_then_verify(
            &dir,
            &format!("roots_{name}"),
            &["roots", "--input", path.to_str().unwrap(), "--n", "2"],
        );
    }

    println!("PASS criterion 11: all fixtures pass parse -> command -> verify with exit 0");
}

#[test]
fn criterion_11_malformed_fixtures_exit_as_specified() {
    // parse failures exit 1
    for name in ["bad_header", "bad_token", "count_mismatch"] {
        let path = fixture(&format!("{name}.mat"));
        let out = run(&["factor", "--input", path.to_str().unwrap()]);
        assert_eq!(exit_code(&out), 1, "{name} should exit 1");
        assert!(!out.stderr.is_empty(), "{name} should print a diagnostic");
    }
    // missing file is an I/O failure
    let out = run(&["factor", "--input", "/nonexistent/never.mat"]);
    assert_eq!(exit_code(&out), 1);

    // validation failures exit 2 with a one-line diagnostic
    let nonnormal = fixture("nonnormal.mat");
    let out = run(&["factor", "--input", nonnormal.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("normal"), "diagnostic names the precondition: {msg}");

    let x = fixture("pauli_x.mat");
    let out = run(&["idem-decompose", "--input", x.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2, "X is not an idempotent");

    let out = run(&["density", "--input", x.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2, "X is not a density matrix");

    println!("PASS criterion 11: malformed fixtures exit 1/2 as specified");
}

#[test]
fn root_cap_and_tolerance_flags() {
    let h4 = fixture("hadamard4.mat");
    // degree 100 on a factorization with one factor and a residual would
    // enumerate 10000 roots, over the requested cap
    let out = run(&[
        "roots",
        "--input",
        h4.to_str().unwrap(),
        "--n",
        "100",
        "--max-roots",
        "4",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("10000"));

    // loosened tolerances are accepted and flow into the report header
    let h = fixture("hadamard.mat");
    let out = run(&[
        "factor",
        "--input",
        h.to_str().unwrap(),
        "--tol-struct",
        "1e-8",
        "--tol-cluster",
        "1e-5",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("tols 1.0000000000000000e-8"));

    // inverted tolerances are a validation error
    let out = run(&[
        "factor",
        "--input",
        h.to_str().unwrap(),
        "--tol-struct",
        "0.5",
        "--tol-cluster",
        "0.1",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn reports_are_deterministic() {
    let path = fixture("cnot.mat");
    let a = run(&["factor", "--input", path.to_str().unwrap()]);
    let b = run(&["factor", "--input", path.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout, "identical inputs must give identical bytes");

    let c = run(&["roots", "--input", path.to_str().unwrap(), "--n", "2", "--format", "tsv"]);
    let d = run(&["roots", "--input", path.to_str().unwrap(), "--n", "2", "--format", "tsv"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn density_and_power_reports_verify() {
    let dir = tempfile::tempdir().unwrap();
    let rho = fixture("density_diag.mat");
    command_then_verify(
        &dir,
        "density_diag",
        &["density", "--input", rho.to_str().unwrap()],
    );
    let rot = fixture("rotation_pi4.mat");
    command_then_verify(
        &dir,
        "power_rotation",
        &["power", "--input", rot.to_str().unwrap(), "--m", "3"],
    );
}

#[test]
fn build_frame_reproduces_pauli_x() {
    let dir = tempfile::tempdir().unwrap();
    let frame = fixture("frame_x.mat");
    let out = run(&["build-frame", "--input", frame.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    // built matrix is X: first input row is (0, 1)
    assert!(
        text.lines().any(|l| l.starts_with("input row 0 0 0 1")),
        "built matrix should be Pauli X:\n{text}"
    );
    let report_path = dir.path().join("frame.report");
    std::fs::write(&report_path, out.stdout.as_slice()).unwrap();
    let verify = run(&["verify", "--input", report_path.to_str().unwrap()]);
    assert_eq!(exit_code(&verify), 0);
}

#[test]
fn gate_subcommand_emits_catalog_factorization() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["gate", "--gate", "phase", "--theta", "0.62831853071795865"]);
    assert_eq!(exit_code(&out), 0);
    let report_path = dir.path().join("gate.report");
    std::fs::write(&report_path, out.stdout.as_slice()).unwrap();
    let verify = run(&["verify", "--input", report_path.to_str().unwrap()]);
    assert_eq!(exit_code(&verify), 0);

    let out = run(&["gate", "--gate", "nosuchgate"]);
    assert_eq!(exit_code(&out), 2);
    let out = run(&["gate", "--gate", "rotation"]);
    assert_eq!(exit_code(&out), 2, "rotation without theta is a validation error");
}

#[test]
fn tsv_report_reparses_to_the_same_reconstruction() {
    // in tsv no value is snapped, so the re-parsed factorization must
    // reproduce the reported residual exactly
    let dir = tempfile::tempdir().unwrap();
    let path = fixture("hadamard.mat");
    let out = run(&["factor", "--input", path.to_str().unwrap(), "--format", "tsv"]);
    assert_eq!(exit_code(&out), 0);
    let report_path = dir.path().join("h.report");
    std::fs::write(&report_path, out.stdout.as_slice()).unwrap();
    let verify = run(&["verify", "--input", report_path.to_str().unwrap()]);
    assert_eq!(exit_code(&verify), 0);
    let text = String::from_utf8_lossy(&verify.stdout);
    assert!(text.contains("check reconstruction PASS"));
}

#[test]
fn classify_and_pinv_commands_report() {
    let path = fixture("bell.mat");
    let out = run(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("flags normal 1 hermitian 0 unitary 1"));

    let out = run(&["pinv", "--input", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("mp_residual"));
    // pseudo-inverse of the rotation generator is its adjoint: (0,1) entry -1
    let row0 = text
        .lines()
        .find(|l| l.starts_with("pinv row 0"))
        .expect("pinv row present");
    let fields: Vec<f64> = row0
        .split_whitespace()
        .skip(3)
        .map(|t| t.parse().unwrap())
        .collect();
    assert!((fields[2] + 1.0).abs() < 1e-12, "entry (0,1) should be -1: {row0}");
}
