use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobarlab")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn homology_of_the_sphere() {
    let v = json(&["homology", &data("sphere2.json")]);
    assert_eq!(v["command"], "homology");
    assert_eq!(v["results"]["homology"]["betti"], serde_json::json!([1, 0, 1, 0, 0, 0, 0]));
}

#[test]
fn cubical_input_is_accepted() {
    let v = json(&["homology", &data("circle-cubical.json")]);
    assert_eq!(v["results"]["homology"]["betti"], serde_json::json!([1, 1, 0, 0, 0, 0, 0]));
}

#[test]
fn loop_reports_are_byte_identical() {
    let args = ["loop", &data("sphere3.json"), "--max-degree", "4", "--json", "-"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn fundamental_group_algebra_of_z2() {
    let out = run(&["pi1-algebra", &data("bz2.json")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(g)^2 = 1"), "{text}");
    assert!(text.contains("dimension over Q: 2"), "{text}");
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(run(&["homology", "/nonexistent/set.json"]).status.code(), Some(2));
    assert_eq!(run(&["cobar", &data("circle-cubical.json")]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn verification_passes() {
    let out = run(&["verify", "--suite", "necklace", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
