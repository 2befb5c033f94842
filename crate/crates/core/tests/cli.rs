//! End-to-end tests of the command-line binary: golden output, exit
//! codes, JSON determinism, and the oriental-to-contraction pipeline.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use orientals::homcat::truncation2_of_poset_oriental;
use orientals::simplicial::Poset;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orientals"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn fixture(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).expect("fixture is writable");
    path
}

const CHAIN3: &str = r#"{"elements":["0","1","2"],"leq":[["0","1"],["1","2"]]}"#;

const LOOP_COMPLEX: &str = r#"{"max_degree":1,"basis":[["a","b"],["e","f"]],"diff":{"e":{"degree":0,"coeffs":{"b":1,"a":-1}},"f":{"degree":0,"coeffs":{"a":1,"b":-1}}},"aug":{"a":1,"b":1}}"#;

#[test]
fn oriental_two_prints_the_golden_atom_tables() {
    let output = run(&["oriental", "2"]);
    assert!(output.status.success());
    assert_eq!(
        stdout_of(&output),
        "oriental of the standard 2-simplex\n\
         dim 0:\n\
         \x20 (0) = ((0);(0))\n\
         \x20 (1) = ((1);(1))\n\
         \x20 (2) = ((2);(2))\n\
         dim 1:\n\
         \x20 (0,1) = ((0),(0,1);(1),(0,1))\n\
         \x20 (0,2) = ((0),(0,2);(2),(0,2))\n\
         \x20 (1,2) = ((1),(1,2);(2),(1,2))\n\
         dim 2:\n\
         \x20 (0,1,2) = ((0),(0,2),(0,1,2);(2),(0,1)+(1,2),(0,1,2))\n"
    );
}

#[test]
fn oriental_json_feeds_check_contraction() {
    let dir = tempfile::tempdir().expect("temp dir");

    let standard = run(&["--json", "oriental", "3"]);
    assert!(standard.status.success());
    let standard_path = fixture(&dir, "standard.json", &stdout_of(&standard));
    let standard_path = standard_path.to_str().expect("path is UTF-8");

    let check = run(&["check-contraction", standard_path]);
    assert_eq!(check.status.code(), Some(0), "{}", stdout_of(&check));

    // Forcing the dual convention on the standard data surfaces sign
    // violations.
    let flipped = run(&["check-contraction", standard_path, "--dual"]);
    assert_eq!(flipped.status.code(), Some(1));
    assert!(stdout_of(&flipped).contains("FAIL"));

    let dual = run(&["--json", "oriental", "3", "--dual"]);
    assert!(dual.status.success());
    let dual_path = fixture(&dir, "dual.json", &stdout_of(&dual));
    let check = run(&["check-contraction", dual_path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0), "{}", stdout_of(&check));
}

#[test]
fn enumerate_reports_the_triangle_counts() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = fixture(&dir, "chain3.json", CHAIN3);
    let output = run(&["enumerate", path.to_str().unwrap(), "--dim", "2", "--cap", "2"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.starts_with("counts: 3/7/8\ntruncated: false\n"), "{text}");
    assert!(text.contains("((0),(0,2),(0,1,2);(2),(0,1)+(1,2),(0,1,2))"));
}

#[test]
fn check_base_flags_loops_with_exit_one() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = fixture(&dir, "loop.json", LOOP_COMPLEX);
    let output = run(&["check-base", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let text = stdout_of(&output);
    assert!(text.contains("loop-free: FAIL"), "{text}");
    assert!(text.contains("cycle"), "{text}");
    assert!(text.contains("unitary: PASS"), "{text}");
}

#[test]
fn malformed_json_exits_two_with_a_location() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = fixture(&dir, "bad.json", "{\"elements\": [,]}");
    let output = run(&["check-base", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let text = stderr_of(&output);
    assert!(text.contains("line 1"), "{text}");
}

#[test]
fn hom_lists_the_triangle_filler() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = fixture(&dir, "chain3.json", CHAIN3);
    let to = r#"{"dim":1,"row0":[{"degree":0,"coeffs":{"(0)":1}},{"degree":1,"coeffs":{"(0,1)":1,"(1,2)":1}}],"row1":[{"degree":0,"coeffs":{"(2)":1}},{"degree":1,"coeffs":{"(0,1)":1,"(1,2)":1}}]}"#;
    let output = run(&[
        "hom",
        path.to_str().unwrap(),
        "--from",
        "(0,2)",
        "--to",
        to,
        "--bound",
        "0",
        "--cap",
        "2",
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let text = stdout_of(&output);
    assert!(text.contains("hom dim 0: 1 cells"), "{text}");
    assert!(text.contains("((0),(0,2),(0,1,2);(2),(0,1)+(1,2),(0,1,2))"));
}

#[test]
fn hom_rejects_nonparallel_cells() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = fixture(&dir, "chain3.json", CHAIN3);
    let output = run(&["hom", path.to_str().unwrap(), "--from", "(0,2)", "--to", "(0,1,2)"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("not parallel"));
}

#[test]
fn truncate2_json_matches_the_library() {
    let output = run(&["--json", "truncate2", CHAIN3]);
    assert!(output.status.success());
    let poset: Poset = serde_json::from_str(CHAIN3).expect("poset parses");
    let expected =
        serde_json::to_string(&truncation2_of_poset_oriental(&poset)).expect("serializes");
    assert_eq!(stdout_of(&output).trim_end(), expected);
}

#[test]
fn truncate2_reads_a_file_argument() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = fixture(&dir, "chain3.json", CHAIN3);
    let by_file = run(&["truncate2", path.to_str().unwrap()]);
    let inline = run(&["truncate2", CHAIN3]);
    assert!(by_file.status.success());
    assert_eq!(stdout_of(&by_file), stdout_of(&inline));
    assert!(stdout_of(&by_file).contains("hom(0,2): {0,1,2} {0,2}"));
}

#[test]
fn json_output_is_byte_deterministic() {
    let first = run(&["--json", "oriental", "3"]);
    let second = run(&["--json", "oriental", "3"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn the_cap_environment_variable_is_honored() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = fixture(&dir, "chain3.json", CHAIN3);
    let output = Command::new(env!("CARGO_BIN_EXE_orientals"))
        .args(["enumerate", path.to_str().unwrap(), "--dim", "1"])
        .env("ORIENTALS_CAP", "1")
        .output()
        .expect("the binary runs");
    assert!(output.status.success());
    assert!(stdout_of(&output).starts_with("counts: 3/7\n"));

    let bad = Command::new(env!("CARGO_BIN_EXE_orientals"))
        .args(["enumerate", path.to_str().unwrap(), "--dim", "1"])
        .env("ORIENTALS_CAP", "many")
        .output()
        .expect("the binary runs");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn selftest_prints_one_line_per_check() {
    let output = run(&["selftest"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().all(|line| line.starts_with("PASS ")));
}
