//! Golden-file tests for the command-line interface: every command's
//! output must be byte-identical to the committed expectation, across
//! repeated runs and regardless of thread-count environment.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn golden(name: &str) -> Vec<u8> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()))
}

fn run(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xbim"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .env("RUST_TEST_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn check_case(args: &[&str], golden_name: &str, expect_code: i32) {
    let expected = golden(golden_name);
    let first = run(args, "1");
    assert_eq!(
        first.status.code(),
        Some(expect_code),
        "{args:?}: stderr {}",
        String::from_utf8_lossy(&first.stderr)
    );
    assert_eq!(
        first.stdout,
        expected,
        "{args:?} deviates from {golden_name}:\n{}",
        String::from_utf8_lossy(&first.stdout)
    );
    // Byte-identical across runs and thread counts.
    for threads in ["2", "8"] {
        let again = run(args, threads);
        assert_eq!(again.status.code(), Some(expect_code), "{args:?} with {threads} threads");
        assert_eq!(again.stdout, expected, "{args:?} varies with {threads} threads");
    }
}

#[test]
fn check_commands_match_golden_files() {
    let ws = fixture("workspace.json");
    let broken = fixture("broken.json");
    check_case(&["check", "ideal_in_z4", "--input", &ws], "check_ideal.json", 0);
    check_case(&["check", "split_id", "--input", &ws], "check_butterfly.json", 0);
    check_case(&["check", "ideal_in_z4", "--input", &broken], "check_broken.json", 1);
}

#[test]
fn invariant_commands_match_golden_files() {
    let ws = fixture("workspace.json");
    check_case(&["pi", "ideal_in_z4", "--input", &ws], "pi_ideal.json", 0);
    check_case(&["fraction", "split_id", "--input", &ws], "fraction_split_id.json", 0);
    check_case(&["split", "split_id", "--input", &ws], "split_split_id.json", 0);
}

#[test]
fn composition_commands_match_golden_files() {
    let ws = fixture("workspace.json");
    check_case(
        &["compose", "split_id", "split_id", "composed", "--input", &ws],
        "compose_self.json",
        0,
    );
    check_case(
        &["isos", "ideal_in_z4", "ideal_in_z4", "--input", &ws],
        "isos_self.json",
        0,
    );
}

#[test]
fn torsor_commands_match_golden_files() {
    let ws = fixture("workspace.json");
    check_case(&["torsor", "check", "triv3", "--input", &ws], "torsor_check.json", 0);
    check_case(
        &["torsor", "product", "triv3", "triv3", "t9", "--input", &ws],
        "torsor_product.json",
        0,
    );
    check_case(
        &["torsor", "apply", "split_id", "triv3", "pushed", "--input", &ws],
        "torsor_apply.json",
        0,
    );
}

#[test]
fn cocycle_commands_match_golden_files() {
    let ws = fixture("workspace.json");
    check_case(&["cocycle", "check", "descent12", "--input", &ws], "cocycle_check.json", 0);
    check_case(
        &["cocycle", "mul", "descent12", "descent12", "square", "--input", &ws],
        "cocycle_mul.json",
        0,
    );
    check_case(
        &["cocycle", "classes", "ideal_in_z4", "2", "--input", &ws],
        "cocycle_classes.json",
        0,
    );
}

#[test]
fn enumerate_matches_golden_file() {
    check_case(&["enumerate", "4"], "enumerate_4.json", 0);
}

#[test]
fn input_errors_exit_2_with_json_error_objects() {
    let ws = fixture("workspace.json");
    let out = run(&["check", "does_not_exist", "--input", &ws], "1");
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("error is JSON");
    assert!(v.get("code").is_some() && v.get("message").is_some() && v.get("path").is_some());

    let out = run(&["pi", "ideal_in_z4", "--input", "/nonexistent/file.json"], "1");
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("error is JSON");
    assert_eq!(v["path"], "/nonexistent/file.json");
}

#[test]
fn composed_butterfly_is_isomorphic_to_the_input() {
    // Unit law through the CLI: compose with the identity butterfly,
    // reload the output, and find an isomorphism to the original.
    let ws = fixture("workspace.json");
    let dir = std::env::temp_dir().join("xbim-cli-compose-test");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("composed.json");
    let out = Command::new(env!("CARGO_BIN_EXE_xbim"))
        .args([
            "compose",
            "split_id",
            "split_id",
            "composed",
            "--input",
            &ws,
            "--output",
            out_path.to_str().unwrap(),
        ])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let out = run(
        &["isos", "composed", "split_id", "--input", &ws, "--input", out_path.to_str().unwrap()],
        "1",
    );
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!v["isomorphisms"].as_array().unwrap().is_empty());
    std::fs::remove_dir_all(&dir).ok();
}
