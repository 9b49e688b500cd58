use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracolor")).args(args).env_remove("FRACOLOR_BUDGET").output().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn color_prism_even_gives_four_colors() {
    let o = run(&["color", "--graph", "prism", "--m", "2", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["kind"], "coloring");
    assert_eq!(v["num_colors"], 4);
    assert_eq!(v["coloring"][0]["vertex"]["kind"], "branch");
}

#[test]
fn counterexample_exits_one_with_refutation() {
    let o = run(&["counterexample"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["kind"], "refutation");
    assert_eq!(v["refutation"]["omega_colorable"], false);
    assert_eq!(v["refutation"]["six_colorable"], true);
}

#[test]
fn omega_formula_value() {
    let o = run(&["omega", "--delta", "3", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "5");
}

#[test]
fn written_certificates_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4.json");
    let p = path.to_str().unwrap();
    let o = run(&["color", "--graph", "K4", "--m", "3", "--n", "5", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", p]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("valid"));

    let neg = dir.path().join("c5.json");
    let n = neg.to_str().unwrap();
    let o = run(&["chi", "--graph", "C5", "--m", "1", "--n", "3", "--k", "2", "--out", n]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(run(&["verify", n]).status.code(), Some(1));
}

#[test]
fn graph_files_and_dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4.col");
    std::fs::write(&path, "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n").unwrap();
    let o = run(&["build", "--graph-file", path.to_str().unwrap(), "--m", "2", "--n", "3", "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "G^(2/3): 16 vertices, 42 edges");
    let o = run(&["color", "--graph", "K4", "--m", "2", "--n", "4", "--format", "dot"]);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("graph G {"));
}

#[test]
fn errors_exit_two() {
    assert_eq!(run(&["color", "--graph", "K4", "--m", "3"]).status.code(), Some(2));
    assert_eq!(run(&["color", "--graph", "nonsense", "--m", "2", "--n", "4"]).status.code(), Some(2));
    assert_eq!(run(&["color", "--graph", "K4", "--m", "4", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn hunt_writes_one_file_per_instance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("res");
    let o = run(&["hunt", "--graph", "prism", "--m", "3", "--out", out.to_str().unwrap(), "--samples", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(&out).unwrap().count(), 4);
    assert!(String::from_utf8_lossy(&o.stdout).contains("prism (n=5)"));
}
