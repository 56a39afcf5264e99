use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leibniz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code().unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

/// `[e_i, e_1] = e_{i+1}` written out by hand.
fn nf_file(n: usize) -> String {
    let rows: Vec<String> = (1..n)
        .map(|i| format!(r#"{{"i": {i}, "j": 1, "k": {}, "c": "1"}}"#, i + 1))
        .collect();
    format!(r#"{{"dim": {n}, "brackets": [{}]}}"#, rows.join(", "))
}

#[test]
fn check_nf5_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "nf5.json", &nf_file(5));
    let out = run(&["--format", "pretty", "check", "--file", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("right Leibniz: OK"));
    // NF_n is not left Leibniz, so --left fails.
    assert_eq!(run(&["check", "--file", &f, "--left"]).status.code(), Some(1));
}

#[test]
fn check_sl2_both_sides() {
    // [h,e] = 2e, [h,f] = -2f, [e,f] = h, antisymmetric.
    let sl2 = r#"{"dim": 3, "basis": ["h", "e", "f"], "brackets": [
        {"i": 1, "j": 2, "k": 2, "c": "2"}, {"i": 2, "j": 1, "k": 2, "c": "-2"},
        {"i": 1, "j": 3, "k": 3, "c": "-2"}, {"i": 3, "j": 1, "k": 3, "c": "2"},
        {"i": 2, "j": 3, "k": 1, "c": "1"}, {"i": 3, "j": 2, "k": 1, "c": "-1"}
    ]}"#;
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "sl2.json", sl2);
    let (v, code) = json(&["check", "--file", &f]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["right"]["ok"], true);
    assert_eq!(v["result"]["left"]["ok"], true);
    assert_eq!(run(&["check", "--file", &f, "--left"]).status.code(), Some(0));
}

#[test]
fn check_broken_table() {
    // [e1,e1] = e2 and [e2,e1] = e1: ad_{e1} is not a derivation.
    let broken = r#"{"dim": 2, "brackets": [
        {"i": 1, "j": 1, "k": 2, "c": "1"}, {"i": 2, "j": 1, "k": 1, "c": "1"}
    ]}"#;
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "broken.json", broken);
    let out = run(&["--format", "pretty", "check", "--file", &f]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("right Leibniz: FAIL"), "{text}");
    assert!(text.contains("first at (i, j, k) = ("), "{text}");
    let (v, _) = json(&["check", "--file", &f]);
    let first = &v["result"]["right"]["violations"][0];
    assert!(first["i"].is_u64() && first["residual"].is_array());
}

#[test]
fn space_dimensions() {
    let dim = |args: &[&str]| json(args).0["result"]["dim"].as_u64().unwrap();
    assert_eq!(dim(&["bider", "--family", "NF", "--n", "4"]), 7);
    assert_eq!(dim(&["der", "--family", "NF", "--n", "2"]), 2);
    assert_eq!(dim(&["antider", "--family", "F1", "--n", "5"]), 7);
}

#[test]
fn pretty_layout_puts_images_in_columns() {
    let out = run(&["--format", "pretty", "der", "--family", "NF", "--n", "2"]);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    // The nilpotent derivation sends e1 to e2: column e1, row e2.
    let want = "    e1 e2\ne1   0  0\ne2   1  0\n";
    assert!(text.contains(want), "{text}");
}

#[test]
fn bider_algebra_reports() {
    let (v, code) = json(&["bider-algebra", "--family", "NF", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 5);
    assert_eq!(v["result"]["solvable"], true);
    assert_eq!(v["result"]["closure_ok"], true);

    let (v, _) = json(&["bider-algebra", "--family", "R_NF", "--n", "4"]);
    assert_eq!(v["result"]["innerness"]["inner_equals_all"], true);

    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ab2.json", r#"{"dim": 2}"#);
    let (v, _) = json(&["bider-algebra", "--file", &f]);
    assert_eq!(v["result"]["dim"], 8);
}

#[test]
fn emit_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bider.json");
    let out_s = out.to_str().unwrap();
    let (v, code) = json(&["bider-algebra", "--family", "NF", "--n", "3", "--emit", out_s]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let parsed = leibniz_core::file::parse_algebra(&text).unwrap();
    assert_eq!(parsed.dim(), 5);
    assert_eq!(leibniz_core::file::emit_algebra(&parsed), text);
    // Bracket list in the report matches the emitted file.
    let file: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(
        file["brackets"].as_array().unwrap().len(),
        v["result"]["brackets"].as_array().unwrap().len()
    );
    // The emitted algebra is itself right Leibniz.
    assert_eq!(run(&["check", "--file", out_s]).status.code(), Some(0));
}

#[test]
fn series_of_nf() {
    let (v, code) = json(&["series", "--family", "NF", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["lower_central"]["dims"], serde_json::json!([4, 3, 2, 1, 0]));
    assert_eq!(v["result"]["nilpotent"], true);
    assert_eq!(v["result"]["filiform"], false);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["bider", "--family", "F2", "--n", "5"][..],
        &["bider-algebra", "--family", "L1", "--n", "4"][..],
        &["verify-paper", "--family", "R_F1", "--n", "4"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn verify_paper_rows() {
    let (v, code) = json(&["verify-paper", "--family", "R_NF", "--n", "5"]);
    assert_eq!(code, 0);
    let claims = v["result"]["claims"].as_array().unwrap();
    let row = claims.iter().find(|c| c["claim"] == "dim bider").unwrap();
    assert_eq!(row["status"], "DELTA");
    assert!(row["detail"].as_str().unwrap().contains("stated 7"));
    assert!(!v["warnings"].as_array().unwrap().is_empty());

    let (v, _) = json(&["verify-paper", "--family", "L2", "--n", "5"]);
    assert_eq!(v["result"]["summary"]["fail"], 0);
}

#[test]
fn verify_paper_sweep() {
    let (v, _) = json(&["verify-paper", "--all", "--n-max", "5"]);
    let claims = v["result"]["claims"].as_array().unwrap();
    for tag in ["NF", "F1", "F2", "R_NF", "R_F1", "L1", "L2"] {
        assert!(claims.iter().any(|c| c["family"] == tag), "{tag}");
    }
    let s = &v["result"]["summary"];
    let total = s["pass"].as_u64().unwrap() + s["fail"].as_u64().unwrap() + s["delta"].as_u64().unwrap();
    assert_eq!(total as usize, claims.len());
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_index = write(
        dir.path(),
        "bad.json",
        r#"{"dim": 2, "brackets": [{"i": 3, "j": 1, "k": 1, "c": "1"}]}"#,
    );
    let out = run(&["check", "--file", &bad_index]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("brackets[0].i"));

    let malformed = write(dir.path(), "malformed.json", "{\n  \"dim\": ,\n}");
    let out = run(&["check", "--file", &malformed]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    assert_eq!(run(&["check", "--file", "/nonexistent/x.json"]).status.code(), Some(2));
    assert_eq!(run(&["bider", "--family", "XYZ", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["bider", "--family", "F1", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["der"]).status.code(), Some(2));
    // clap usage errors also exit 2.
    assert_eq!(run(&["der", "--family", "NF"]).status.code(), Some(2));
}
