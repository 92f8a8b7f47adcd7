use std::io::Write;
use std::process::{Command, Output};

use radj::finpres::CatJson;
use radj::zigzag::{Zigzag, ZigzagJson};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn radj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radj")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn parity_of_a_facet() {
    let o = radj(&["cube", "parity", "--face", "1I", "--in", "II"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "even\n");
    let o = radj(&["cube", "parity", "--face", "I0", "--in", "II"]);
    assert_eq!(stdout(&o), "even\n");
    let o = radj(&["cube", "parity", "--face", "0I", "--in", "II"]);
    assert_eq!(stdout(&o), "odd\n");
}

#[test]
fn snake_on_walking_arrow_file() {
    let o = radj(&["zigzag", "snake", "--input", &fixture("walking_arrow.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "f: OK (both snakes Equal at depth 6)\n");
}

#[test]
fn adj_compare_agrees() {
    let o = radj(&["adj", "compare", "--gen-bound", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 disagree"), "{}", stdout(&o));
    let o = radj(&["adj", "compare", "--gen-bound", "2", "--format", "json", "--parallel", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["hard_disagreements"], 0);
    assert_eq!(v["unknown_word_pairs"], 0);
}

#[test]
fn extend_into_fixtures() {
    let o = radj(&[
        "extend",
        "--input",
        &fixture("walking_arrow.json"),
        "--target",
        &fixture("adjoint_equivalence.json"),
        "--functor",
        &fixture("functor_arrow_to_equivalence.json"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("f← ↦ g"));
    assert!(out.contains("restriction OK"));
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, r#"{{"objects": {{"x": "x", "y": "y"}}, "morphisms": {{"id_x": "id_x", "id_y": "id_y", "f": "g"}}}}"#)
        .unwrap();
    let o =
        radj(&["extend", "--target", &fixture("adjoint_equivalence.json"), "--functor", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a functor"));
}

#[test]
fn input_errors_exit_two() {
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, "{{ not json").unwrap();
    assert_eq!(radj(&["squares", "companions", "--input", bad.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(radj(&["cube", "check-kappa", "--n", "4"]).status.code(), Some(2));
    assert_eq!(radj(&["zigzag", "reduce", "--zigzag", "x: f<"]).status.code(), Some(2));
    assert_eq!(radj(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn verification_commands_pass_on_fixtures() {
    for f in ["walking_arrow.json", "ordinal_2.json", "cyclic_3.json"] {
        let p = fixture(f);
        assert_eq!(radj(&["squares", "companions", "--input", &p]).status.code(), Some(0), "{f}");
        assert_eq!(radj(&["squares", "decompose", "--input", &p]).status.code(), Some(0), "{f}");
        assert_eq!(radj(&["zigzag", "snake", "--input", &p]).status.code(), Some(0), "{f}");
    }
    assert_eq!(radj(&["cube", "check-kappa", "--n", "3"]).status.code(), Some(0));
}

#[test]
fn json_output_round_trips() {
    let o = radj(&[
        "zigzag",
        "reduce",
        "--zigzag",
        "0: 01> 12>",
        "--input",
        &fixture("ordinal_2.json"),
        "--format",
        "json",
    ]);
    let j: ZigzagJson = serde_json::from_slice(&o.stdout).unwrap();
    let raw: CatJson = serde_json::from_str(&std::fs::read_to_string(fixture("ordinal_2.json")).unwrap()).unwrap();
    let x = radj::finpres::FinCategory::from_json(&raw).unwrap();
    assert_eq!(Zigzag::from_json(&x, &j).unwrap(), Zigzag::parse(&x, "0: 02>").unwrap());
}

#[test]
fn normalize_and_equal_on_files() {
    let o = radj(&["zigzag", "normalize", "--cell", &fixture("eta_cell.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[η(f)]"), "{}", stdout(&o));
    let o = radj(&["zigzag", "equal", "--lhs", &fixture("snake_left_word.json"), "--rhs", "x: f>"]);
    assert_eq!(stdout(&o), "Equal\n");
}

#[test]
fn render_outputs() {
    let o = radj(&["render", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    radj::render::validate_dot(&stdout(&o)).unwrap();
    let o = radj(&["render", "--format", "tikz", "--cell", &fixture("eta_cell.json")]);
    let t = stdout(&o);
    assert!(t.contains("\\begin{tikzpicture}") && t.contains("\\draw[red]"));
    let o = radj(&["render", "--word", "x: f> ; eta:f fwd:f | fwd:f eps:f", "--no-curves"]);
    let d = stdout(&o);
    radj::render::validate_dot(&d).unwrap();
    assert!(!d.contains("red"));
}
