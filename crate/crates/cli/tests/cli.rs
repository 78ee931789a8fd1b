use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    format!(
        "{}/../core/corpus/{name}.quiver",
        env!("CARGO_MANIFEST_DIR")
    )
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("gentle-cli-{}-{name}", std::process::id()))
}

fn gentle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gentle"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_accepts_the_corpus() {
    for name in [
        "a2",
        "a3",
        "ex22",
        "sq33",
        "grid_2_4",
        "grid_2_5",
        "gls",
        "kronecker",
    ] {
        let o = gentle(&["validate", &corpus(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert!(stdout(&o).starts_with("gentle: yes\n"));
    }
}

#[test]
fn validate_reports_s1() {
    let path = scratch("s1.quiver");
    std::fs::write(
        &path,
        "algebra bad\nvertices: 1 2 3 4\narrow x: 1 -> 2\narrow y: 1 -> 3\narrow z: 1 -> 4\nrelations:\n",
    )
    .unwrap();
    let o = gentle(&["validate", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("gentle: no\n"));
    assert!(out.contains("S1: vertex 1 has 3 outgoing arrows"));
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(gentle(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gentle(&["homdim", &corpus("a2")]).status.code(), Some(2));
    let o = gentle(&["strings", &corpus("kronecker")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("band"));
    let o = gentle(&["sttilt", &corpus("ex22")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("infinite type"));
    let o = gentle(&["tau", &corpus("a2"), "--string", "a a"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: strings:"));
}

#[test]
fn strings_and_translates() {
    let o = gentle(&["strings", &corpus("a3")]);
    assert_eq!(stdout(&o), "e(1)\ne(2)\ne(3)\na\nb\na^- b^-\n");
    let o = gentle(&["strings", &corpus("kronecker"), "--max-len", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
    assert_eq!(
        stdout(&gentle(&["tau", &corpus("a2"), "--string", "e(2)"])),
        "e(1)\n"
    );
    assert_eq!(
        stdout(&gentle(&["tau", &corpus("a2"), "--string", "e(1)"])),
        "0\n"
    );
    assert_eq!(
        stdout(&gentle(&[
            "tau",
            &corpus("a2"),
            "--string",
            "e(1)",
            "--fringed"
        ])),
        "1.fo1 1.fo2^-\n"
    );
}

#[test]
fn homdim_on_the_loop_algebra() {
    assert_eq!(
        stdout(&gentle(&["homdim", &corpus("gls"), "a", "a"])),
        "2\n"
    );
    assert_eq!(
        stdout(&gentle(&["homdim", &corpus("gls"), "a", "a", "--tau"])),
        "0\n"
    );
    let o = gentle(&["kiss", &corpus("gls"), "a", "a"]);
    assert!(stdout(&o).ends_with("count: 0\n"));
}

#[test]
fn ext_sequences() {
    let o = gentle(&["ext", &corpus("a2"), "e(2)", "e(1)"]);
    assert_eq!(stdout(&o), "dim Ext1: 1\n0 -> e(1) -> a -> e(2) -> 0\n");
    let o = gentle(&["ext", &corpus("a2"), "e(1)", "e(2)"]);
    assert_eq!(stdout(&o), "dim Ext1: 0\n");
}

#[test]
fn fringe_round_trips() {
    let path = scratch("sq33.fringed.quiver");
    let o = gentle(&["fringe", &corpus("sq33"), "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let printed = stdout(&gentle(&["fringe", &corpus("sq33")]));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), printed);
    let o = gentle(&["validate", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        printed.lines().filter(|l| l.starts_with("arrow ")).count(),
        12
    );
}

#[test]
fn a2_collections_and_pentagon() {
    let o = gentle(&["sttilt", &corpus("a2")]);
    assert_eq!(
        stdout(&o),
        "e(1), a\ne(1), P[2][1]\ne(2), a\ne(2), P[1][1]\nP[1][1], P[2][1]\n"
    );
    let path = scratch("a2.dot");
    let o = gentle(&["poset", &corpus("a2"), "--dot", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(dot.starts_with("digraph \"a2\" {\n"));
    assert_eq!(
        dot.lines()
            .filter(|l| l.contains("[label=") && !l.contains("->"))
            .count(),
        5
    );
    assert_eq!(dot.lines().filter(|l| l.contains(" -> ")).count(), 5);
}

#[test]
fn mc_walks_for_mod_a() {
    let o = gentle(&["mc", &corpus("a2"), "--torsion-of", "0"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 7);
    assert_eq!(out.matches("[cohook(a)]").count(), 2);
    assert_eq!(out.matches("[cohook(e(1))]").count(), 2);
    assert_eq!(out.matches("[I(").count(), 3);
    let o = gentle(&["mc", &corpus("a2"), "--torsion-of", "0", "--arrow", "a"]);
    assert_eq!(stdout(&o), "a: 1.fo2 a 2.fo1^-  [cohook(a)]\n");
    assert_eq!(
        gentle(&["mc", &corpus("a2"), "--torsion-of", "9"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn census_everywhere() {
    for name in ["a2", "a3", "grid_2_4", "gls"] {
        let o = gentle(&["census", &corpus(name), "--all"]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert!(stdout(&o).lines().all(|l| l.contains(": ok ")));
    }
    assert_eq!(gentle(&["census", &corpus("a2")]).status.code(), Some(1));
}

#[test]
fn oracle_check_passes() {
    for name in ["sq33", "gls", "ex22"] {
        let o = gentle(&["oracle-check", &corpus(name), "--max-len", "3"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn json_envelope_and_quiet() {
    let o = gentle(&["sttilt", &corpus("a3"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "gentle-kiss/1");
    assert_eq!(v["command"], "sttilt");
    assert_eq!(v["count"], 14);
    let o = gentle(&["--quiet", "validate", &corpus("a2")]);
    assert!(o.stdout.is_empty());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["poset", &corpus("grid_2_4"), "--jobs", "3", "--json"];
    let a = gentle(&args);
    let b = gentle(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}
