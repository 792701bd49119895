use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nichols-gk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn classify_example58() {
    let o = run(&["classify", &path("example58.bvs")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("GKdim Finite(2)"), "{}", stdout(&o));
}

#[test]
fn classify_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["classify", &path("two-blocks-edged.bvs"), "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = std::fs::read_to_string(&out).unwrap();
    let j: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(j["components"][0]["violations"][0]["clause"], "b");
    assert_eq!(j["total"]["variant"], "Infinite");

    let again = dir.path().join("r2.json");
    run(&["classify", &path("two-blocks-edged.bvs"), "--json", again.to_str().unwrap()]);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn classify_several_spaces() {
    let o = run(&["classify", &path("disjoint-blocks.bvs"), "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let json = &text[text.find("\n[").unwrap()..];
    let j: serde_json::Value = serde_json::from_str(json).unwrap();
    let totals: Vec<u64> = j
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["total"]["value"].as_u64().unwrap())
        .collect();
    assert_eq!(totals, vec![2, 4, 6, 8]);

    let o = run(&["classify", &path("disjoint-blocks.bvs"), "--space", "t3"]);
    assert!(stdout(&o).contains("Finite(6)"));
    let o = run(&["classify", &path("disjoint-blocks.bvs"), "--space", "t9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_with_contributions() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.toml");
    std::fs::write(&c, "\"T3-3\" = 4\n").unwrap();
    let o = run(&["classify", &path("block-point.bvs")]);
    assert!(stdout(&o).contains("AtLeast(3)"));
    let o = run(&["classify", &path("block-point.bvs"), "--contributions", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("GKdim Finite(4)"), "{}", stdout(&o));
}

#[test]
fn dims_of_a_cube_root_point() {
    let o = run(&["dims", &path("point-zeta3.bvs"), "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[1, 1, 1, 0]");
    let o = run(&["dims", &path("point-zeta3.bvs"), "--n-max", "3", "--field", "CYCLO(6)", "--literal"]);
    assert_eq!(stdout(&o).trim(), "[1, 1, 1, 0]");
}

#[test]
fn dims_need_a_finite_space() {
    let o = run(&["dims", &path("example58.bvs"), "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--truncate"));
    let o = run(&["dims", &path("example58.bvs"), "--n-max", "2", "--truncate", "t=1"]);
    assert_eq!(stdout(&o).trim(), "[1, 3, 6]");
}

#[test]
fn render_dot() {
    let o = run(&["render", &path("example58.bvs"), "--dot", "-", "--prefix", "4"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("graph flourished {"));
    assert_eq!(dot.matches("shape=square").count(), 1);
    assert_eq!(dot.matches("shape=circle").count(), 4);
    assert_eq!(dot.matches("shape=plaintext").count(), 1);
    let o = run(&["render", &path("cartan-a-plus.bvs"), "--space", "a_plus_zeta5", "--dot", "-", "--dynkin"]);
    assert!(stdout(&o).starts_with("graph dynkin {"));
}

#[test]
fn pbw_check() {
    let o = run(&["pbw-check", &path("quantum-plane.pbw")]);
    assert!(stdout(&o).contains("convex: true"));
    assert!(stdout(&o).contains("gr_gkdim: 2"));
    let o = run(&["pbw-check", &path("not-convex.pbw")]);
    assert!(stdout(&o).contains("convex: false"));
    assert!(stdout(&o).contains("straighten s1 s2"));
}

#[test]
fn realize_json() {
    let o = run(&["realize", &path("block-point.bvs")]);
    assert_eq!(o.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["rank"], 3);
    let o = run(&["realize", &path("example59.bvs"), "--truncate", "*=1"]);
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["rank"], 1 + 6 + 5 + 2);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.bvs");
    std::fs::write(&bad, "space s {\n  block b plus\n").unwrap();
    let o = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":3:"), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["classify", "/nonexistent.bvs"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}
