//! End-to-end tests driving the compiled binary.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::{Command, Output, Stdio};

const EXAMPLE_MOBIUS: &str = r#"{
  "n": 4,
  "representation": "mobius",
  "entries": {
    "1": "3/10", "2": "3/10", "3": "3/10",
    "1,2": "3/10", "1,3": "3/10", "2,3": "3/10",
    "1,2,3": "-21/25",
    "1,2,3,4": "1/25"
  }
}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lovasz"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(stdin.as_bytes())
        .expect("stdin written");
    child.wait_with_output().expect("binary exits")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

/// Parses an emitted document into (n, representation, entries).
fn parse_emitted(text: &str) -> (u64, String, BTreeMap<String, String>) {
    let value: serde_json::Value = serde_json::from_str(text).expect("valid JSON");
    let n = value["n"].as_u64().expect("n");
    let representation = value["representation"].as_str().expect("representation").to_owned();
    let entries = value["entries"]
        .as_object()
        .expect("entries")
        .iter()
        .map(|(k, v)| (k.clone(), v.as_str().expect("string value").to_owned()))
        .collect();
    (n, representation, entries)
}

fn entries(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[test]
fn mobius_of_the_min_game() {
    let output = run(
        &["mobius"],
        r#"{"n": 2, "representation": "game", "entries": {"1,2": "1"}}"#,
    );
    assert_eq!(exit_code(&output), 0, "{}", stderr_of(&output));
    let (n, representation, table) = parse_emitted(&stdout_of(&output));
    assert_eq!(n, 2);
    assert_eq!(representation, "mobius");
    assert_eq!(table, entries(&[("1,2", "1")]));
}

#[test]
fn mobius_of_empty_entries_is_empty() {
    let output = run(&["mobius"], r#"{"n": 3, "representation": "game", "entries": {}}"#);
    assert_eq!(exit_code(&output), 0);
    let (_, _, table) = parse_emitted(&stdout_of(&output));
    assert!(table.is_empty());
}

#[test]
fn zeta_then_mobius_round_trips_the_example() {
    let game = run(&["zeta"], EXAMPLE_MOBIUS);
    assert_eq!(exit_code(&game), 0, "{}", stderr_of(&game));
    let recovered = run(&["mobius"], &stdout_of(&game));
    assert_eq!(exit_code(&recovered), 0);
    let (_, representation, table) = parse_emitted(&stdout_of(&recovered));
    assert_eq!(representation, "mobius");
    assert_eq!(
        table,
        entries(&[
            ("1", "3/10"),
            ("2", "3/10"),
            ("3", "3/10"),
            ("1,2", "3/10"),
            ("1,3", "3/10"),
            ("2,3", "3/10"),
            ("1,2,3", "-21/25"),
            ("1,2,3,4", "1/25"),
        ])
    );
}

#[test]
fn approx_degree_one_document() {
    let output = run(&["approx", "--degree", "1"], EXAMPLE_MOBIUS);
    assert_eq!(exit_code(&output), 0);
    let (n, representation, table) = parse_emitted(&stdout_of(&output));
    assert_eq!((n, representation.as_str()), (4, "mobius"));
    assert_eq!(
        table,
        entries(&[
            ("", "1/100"),
            ("1", "89/250"),
            ("2", "89/250"),
            ("3", "89/250"),
            ("4", "1/125"),
        ])
    );
}

#[test]
fn approx_full_degree_echoes_the_coefficients() {
    let output = run(&["approx", "--degree", "4"], EXAMPLE_MOBIUS);
    assert_eq!(exit_code(&output), 0);
    let (_, _, table) = parse_emitted(&stdout_of(&output));
    assert_eq!(table.len(), 8);
    assert_eq!(table["1,2,3"], "-21/25");
    assert_eq!(table["1,2,3,4"], "1/25");
}

#[test]
fn approx_accepts_game_documents_too() {
    let game = run(&["zeta"], EXAMPLE_MOBIUS);
    let output = run(&["approx", "--degree", "0"], &stdout_of(&game));
    assert_eq!(exit_code(&output), 0);
    let (_, _, table) = parse_emitted(&stdout_of(&output));
    assert_eq!(table, entries(&[("", "137/250")]));
}

#[test]
fn approx_methods_emit_identical_bytes() {
    // Awkward rationals on five players; all three routes must agree to the
    // byte.
    let input = r#"{"n": 5, "representation": "mobius", "entries": {
        "1": "7/3", "2": "-2/7", "4": "0.25", "1,3": "5/9", "2,4,5": "-13/11",
        "1,2,3,4": "1/6", "1,2,3,4,5": "3/8", "5": "-4"
    }}"#;
    for degree in ["0", "2", "3"] {
        let closed = run(&["approx", "--degree", degree, "--method", "closed"], input);
        let recursive = run(&["approx", "--degree", degree, "--method", "recursive"], input);
        let oracle = run(&["approx", "--degree", degree, "--method", "oracle"], input);
        assert_eq!(exit_code(&closed), 0);
        assert_eq!(closed.stdout, recursive.stdout, "degree {degree}");
        assert_eq!(closed.stdout, oracle.stdout, "degree {degree}");
    }
}

#[test]
fn oracle_method_refuses_large_n() {
    let input = r#"{"n": 11, "representation": "mobius", "entries": {"1": "1"}}"#;
    let output = run(&["approx", "--degree", "1", "--method", "oracle"], input);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("n <= 10"));
}

#[test]
fn degree_out_of_range_is_a_validation_error() {
    let output = run(&["approx", "--degree", "5"], EXAMPLE_MOBIUS);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn index_im_single_subset_prints_the_bare_rational() {
    let output = run(&["index", "--kind", "im", "--subset", "4"], EXAMPLE_MOBIUS);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout_of(&output), "1/125\n");
    let empty = run(&["index", "--kind", "im", "--subset", ""], EXAMPLE_MOBIUS);
    assert_eq!(stdout_of(&empty), "137/250\n");
}

#[test]
fn index_shapley_power_of_an_additive_game() {
    let input = r#"{"n": 3, "representation": "game", "entries": {
        "1": "1/2", "2": "1/3", "3": "1/6",
        "1,2": "5/6", "1,3": "2/3", "2,3": "1/2",
        "1,2,3": "1"
    }}"#;
    let output = run(&["index", "--kind", "shapley-power"], input);
    assert_eq!(exit_code(&output), 0);
    let (_, representation, table) = parse_emitted(&stdout_of(&output));
    assert_eq!(representation, "shapley-power");
    assert_eq!(table, entries(&[("1", "1/2"), ("2", "1/3"), ("3", "1/6")]));
}

#[test]
fn power_kinds_reject_multi_player_subsets() {
    let output = run(
        &["index", "--kind", "banzhaf-power", "--subset", "1,2"],
        EXAMPLE_MOBIUS,
    );
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("single player"));
}

#[test]
fn im_table_then_inverse_round_trips() {
    let table = run(&["index", "--kind", "im"], EXAMPLE_MOBIUS);
    assert_eq!(exit_code(&table), 0);
    let (_, representation, _) = parse_emitted(&stdout_of(&table));
    assert_eq!(representation, "im");
    let inverse = run(&["inverse"], &stdout_of(&table));
    assert_eq!(exit_code(&inverse), 0, "{}", stderr_of(&inverse));
    let (_, representation, entries_map) = parse_emitted(&stdout_of(&inverse));
    assert_eq!(representation, "mobius");
    assert_eq!(entries_map["1,2,3"], "-21/25");
    assert_eq!(entries_map["1"], "3/10");
    assert_eq!(entries_map.len(), 8);
}

#[test]
fn inverse_requires_an_im_table() {
    let output = run(&["inverse"], EXAMPLE_MOBIUS);
    assert_eq!(exit_code(&output), 2);
    let banzhaf = run(&["index", "--kind", "banzhaf"], EXAMPLE_MOBIUS);
    let output = run(&["inverse"], &stdout_of(&banzhaf));
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn eval_at_vertices_interpolates_both_forms() {
    // v({1,2}) = 3/10 + 3/10 + 3/10 = 9/10.
    for form in ["lovasz", "multilinear"] {
        let output = run(
            &["eval", "--point", "1,1,0,0", "--form", form],
            EXAMPLE_MOBIUS,
        );
        assert_eq!(exit_code(&output), 0);
        let value: f64 = stdout_of(&output).trim().parse().expect("float output");
        assert!((value - 0.9).abs() < 1e-14, "{form}: {value}");
    }
}

#[test]
fn eval_at_the_uniform_half_point() {
    let output = run(
        &["eval", "--point", "0.5,0.5,0.5,0.5", "--form", "lovasz"],
        EXAMPLE_MOBIUS,
    );
    assert_eq!(exit_code(&output), 0);
    let printed = stdout_of(&output);
    let value: f64 = printed.trim().parse().expect("float output");
    assert_eq!(value, 0.5);
    // 15 significant digits: mantissa of 1 + 14 decimals.
    assert!(printed.trim().contains("e-1"), "{printed}");
}

#[test]
fn eval_rejects_bad_points() {
    let wrong_len = run(&["eval", "--point", "0.5,0.5", "--form", "lovasz"], EXAMPLE_MOBIUS);
    assert_eq!(exit_code(&wrong_len), 2);
    let out_of_cube = run(
        &["eval", "--point", "0.5,0.5,0.5,1.5", "--form", "lovasz"],
        EXAMPLE_MOBIUS,
    );
    assert_eq!(exit_code(&out_of_cube), 2);
    let not_a_number = run(
        &["eval", "--point", "0.5,x,0.5,0.5", "--form", "lovasz"],
        EXAMPLE_MOBIUS,
    );
    assert_eq!(exit_code(&not_a_number), 2);
}

#[test]
fn verify_passes_on_clean_input() {
    let output = run(
        &["verify", "--degree", "2", "--samples", "2000"],
        EXAMPLE_MOBIUS,
    );
    assert_eq!(exit_code(&output), 0, "{}", stdout_of(&output));
    let report = stdout_of(&output);
    assert!(report.contains("orthogonality (degree 2): PASS"));
    assert!(report.contains("all checks passed"));
}

#[test]
fn verify_passes_on_an_arbitrary_game_at_every_degree() {
    let input = r#"{"n": 4, "representation": "game", "entries": {
        "1": "2/3", "3": "-1/7", "1,2": "5/4", "2,4": "0.6",
        "1,3,4": "-9/2", "1,2,3,4": "11/13"
    }}"#;
    for degree in 0..=4 {
        let output = run(
            &["verify", "--degree", &degree.to_string(), "--samples", "500"],
            input,
        );
        assert_eq!(exit_code(&output), 0, "degree {degree}:\n{}", stdout_of(&output));
    }
}

#[test]
fn verify_seed_is_reproducible() {
    let args = ["verify", "--degree", "1", "--samples", "500", "--seed", "9"];
    let first = run(&args, EXAMPLE_MOBIUS);
    let second = run(&args, EXAMPLE_MOBIUS);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn input_flag_reads_from_a_file() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("game.json");
    std::fs::write(&path, EXAMPLE_MOBIUS).expect("fixture written");
    let output = Command::new(env!("CARGO_BIN_EXE_lovasz"))
        .args(["approx", "--degree", "0", "--input"])
        .arg(&path)
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let (_, _, table) = parse_emitted(&String::from_utf8(output.stdout).unwrap());
    assert_eq!(table, entries(&[("", "137/250")]));
    let missing = Command::new(env!("CARGO_BIN_EXE_lovasz"))
        .args(["approx", "--degree", "0", "--input", "/nonexistent.json"])
        .output()
        .expect("binary runs");
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn decimals_parse_exactly() {
    let output = run(
        &["mobius"],
        r#"{"n": 1, "representation": "game", "entries": {"1": "0.3"}}"#,
    );
    assert_eq!(exit_code(&output), 0);
    let (_, _, table) = parse_emitted(&stdout_of(&output));
    assert_eq!(table, entries(&[("1", "3/10")]));
}

#[test]
fn values_are_emitted_in_lowest_terms() {
    let output = run(
        &["zeta"],
        r#"{"n": 1, "representation": "mobius", "entries": {"1": "2/4"}}"#,
    );
    assert_eq!(exit_code(&output), 0);
    let (_, _, table) = parse_emitted(&stdout_of(&output));
    assert_eq!(table, entries(&[("1", "1/2")]));
}

#[test]
fn parse_errors_exit_with_status_two() {
    let cases = [
        r#"{"n": 3, "representation": "game", "entries": {"2,1": "1"}}"#,
        r#"{"n": 3, "representation": "game", "entries": {"5": "1"}}"#,
        r#"{"n": 3, "representation": "game", "entries": {"1": "1/0"}}"#,
        r#"{"n": 3, "representation": "game", "entries": {"1": 0.5}}"#,
        r#"{"n": 0, "representation": "game", "entries": {}}"#,
        r#"{"n": 17, "representation": "game", "entries": {}}"#,
        r#"{"n": 3, "representation": "weights", "entries": {}}"#,
        "not json",
    ];
    for case in cases {
        let output = run(&["mobius"], case);
        assert_eq!(exit_code(&output), 2, "case {case}");
        assert!(stderr_of(&output).starts_with("error:"), "case {case}");
    }
}

#[test]
fn representation_mismatches_exit_with_status_two() {
    let output = run(&["mobius"], EXAMPLE_MOBIUS);
    assert_eq!(exit_code(&output), 2);
    let game = run(&["zeta"], EXAMPLE_MOBIUS);
    let output = run(&["zeta"], &stdout_of(&game));
    assert_eq!(exit_code(&output), 2);
    // Index documents do not describe games.
    let table = run(&["index", "--kind", "im"], EXAMPLE_MOBIUS);
    let output = run(&["approx", "--degree", "1"], &stdout_of(&table));
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn emitted_documents_reparse_through_the_binary() {
    // Any emitted document must be accepted again: chain four commands.
    let game = run(&["zeta"], EXAMPLE_MOBIUS);
    let mobius = run(&["mobius"], &stdout_of(&game));
    let approx = run(&["approx", "--degree", "2"], &stdout_of(&mobius));
    let table = run(&["index", "--kind", "banzhaf"], &stdout_of(&approx));
    assert_eq!(exit_code(&table), 0, "{}", stderr_of(&table));
    let (n, representation, _) = parse_emitted(&stdout_of(&table));
    assert_eq!((n, representation.as_str()), (4, "banzhaf"));
}
