use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn novikov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_novikov"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn betti_of_builtins() {
    let o = novikov(&["betti", "builtin:t2_7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("betti: 1 2 1\n"), "{}", stdout(&o));

    let o = novikov(&["betti", "builtin:s1_3", "--weights", "holonomy:2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("betti: 0 0\n"));
    assert!(stdout(&o).contains("h0 criterion: 0"));
}

#[test]
fn malformed_simplex_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "bad.toml");
    fs::write(&file, "vertex_count = 3\nmaximal_simplices = [\n  [0, 1],\n  [2, 1],\n]\n").unwrap();
    let o = novikov(&["betti", &file]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    assert!(stderr(&o).contains("[2, 1]"));

    fs::write(&file, "vertex_count = 3\nmaximal_simplices = [[0, 1]\n").unwrap();
    assert_eq!(novikov(&["betti", &file]).status.code(), Some(2));
    assert_eq!(novikov(&["betti", "missing.toml"]).status.code(), Some(2));
    assert_eq!(novikov(&["betti", "builtin:nope"]).status.code(), Some(2));
}

fn vertex_count(doc: &str) -> usize {
    let line = doc.lines().find(|l| l.starts_with("vertex_count")).unwrap();
    line.split('=').nth(1).unwrap().trim().parse().unwrap()
}

#[test]
fn build_documents() {
    let o = novikov(&["build", "product", "builtin:s1_3", "builtin:s1_3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(vertex_count(&stdout(&o)), 9);

    let o = novikov(&["build", "builtin", "cp2_9"]);
    assert_eq!(vertex_count(&stdout(&o)), 9);
    assert!(stdout(&o).contains("name = \"cp2_9\""));

    let o = novikov(&["build", "subdivide", "builtin:s2_4"]);
    assert_eq!(vertex_count(&stdout(&o)), 14);

    for kind in ["cone", "suspension"] {
        let o = novikov(&["build", kind, "builtin:s1_3"]);
        assert_eq!(o.status.code(), Some(0), "{kind}");
    }
    let o = novikov(&["build", "disjoint-union", "builtin:s1_3", "builtin:s2_4"]);
    assert_eq!(vertex_count(&stdout(&o)), 7);
    let o = novikov(&["build", "mapping-torus", "builtin:s1_3", "--images", "1,2,0"]);
    assert_eq!(vertex_count(&stdout(&o)), 9);
    let o = novikov(&["build", "connect-sum", "builtin:s2_4", "builtin:t2_7"]);
    assert_eq!(vertex_count(&stdout(&o)), 8);

    let o = novikov(&["build", "connect-sum", "builtin:s1_3", "builtin:t2_7"]);
    assert_eq!(o.status.code(), Some(2));
    let o = novikov(&["build", "builtin", "k3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn built_files_feed_back_in() {
    let dir = TempDir::new().unwrap();
    let (x, w) = (path(&dir, "t.toml"), path(&dir, "t.weights.toml"));
    let o = novikov(&[
        "build", "product", "builtin:s1_3", "builtin:s1_3", "--weights-b", "holonomy:2", "--output", &x,
        "--weights-output", &w,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = novikov(&["betti", &x]);
    assert!(stdout(&o).contains("betti: 1 2 1\n"));
    let o = novikov(&["betti", &x, "--weights", &w]);
    assert!(stdout(&o).contains("betti: 0 0 0\n"));

    // Weights are required to have somewhere to go.
    let o = novikov(&["build", "subdivide", "builtin:s1_3", "--weights", "holonomy:2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.toml"), path(&dir, "b.toml"));
    assert!(novikov(&["build", "builtin", "t2_7", "--output", &a]).status.success());
    assert!(novikov(&["build", "disjoint-union", &a, "builtin:point", "--output", &b]).status.success());
    let text = fs::read_to_string(&b).unwrap();
    let o = novikov(&["betti", &b]);
    assert!(stdout(&o).contains("betti: 2 2 1\n"));
    assert!(novikov(&["build", "cone", &b, "--output", &a]).status.success());
    assert!(stdout(&novikov(&["betti", &a])).contains("betti: 1 0 0 0\n"));
    assert_eq!(fs::read_to_string(&b).unwrap(), text);
}

#[test]
fn verify_suites_pass() {
    let dir = TempDir::new().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["kunneth", "builtin:s1_3", "builtin:t2_7", "--weights-a", "holonomy:2"],
        vec!["pd", "builtin:t2_7", "--weights", "class:1:3/2"],
        vec!["euler", "--random", "5"],
        vec!["h0", "builtin:t2_7", "--weights", "holonomy:5"],
        vec!["lefschetz", "builtin:circle3", "--images", "1,2,0", "--weights", "holonomy:2"],
        vec!["blowup", "builtin:cp2_9"],
    ];
    for case in cases {
        let mut args = vec!["verify"];
        args.extend(&case);
        let o = novikov(&args);
        assert_eq!(o.status.code(), Some(0), "{case:?}: {}{}", stdout(&o), stderr(&o));
    }

    let (u, v) = (path(&dir, "u.toml"), path(&dir, "v.toml"));
    fs::write(&u, "vertex_count = 4\nmaximal_simplices = [[0, 1, 3], [0, 2, 3], [1, 2, 3]]\n").unwrap();
    fs::write(&v, "vertex_count = 4\nmaximal_simplices = [[0, 1, 2]]\n").unwrap();
    let o = novikov(&["verify", "mv", "builtin:s2_4", &u, &v]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = novikov(&["verify", "les", "builtin:s2_4", &v, "--weights", "trivial"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // V alone does not cover the sphere.
    let o = novikov(&["verify", "mv", "builtin:s2_4", &v, &v]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn blowup_of_twisted_four_torus() {
    let dir = TempDir::new().unwrap();
    let report = path(&dir, "report.json");
    let o = novikov(&["verify", "blowup", "builtin:torus4", "--weights", "holonomy:2", "--output", &report]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("betti(X # CP2, w~): 0 0 1 0 0\n"));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["suite"], "blowup");
    assert_eq!(json["reports"][0]["pass"], true);
    assert_eq!(json["reports"][0]["lhs"], serde_json::json!(["0", "0", "1", "0", "0"]));
}

#[test]
fn poincare_duality_refuses_non_orientable() {
    let o = novikov(&["verify", "pd", "builtin:rp2_6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("refused"), "{}", stderr(&o));
}

fn selftest_report(dir: &Path, name: &str) -> Vec<u8> {
    let file = dir.join(name);
    let o = novikov(&["selftest", "--fast-modular", "--seed", "7", "--output", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for id in 1..=10 {
        assert!(out.contains(&format!("criterion {id:>2}: PASS")), "{out}");
    }
    fs::read(file).unwrap()
}

#[test]
fn selftest_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let first = selftest_report(dir.path(), "a.json");
    let second = selftest_report(dir.path(), "b.json");
    assert_eq!(first, second);
    let json: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(json["seed"], 7);
    assert_eq!(json["criteria"].as_array().unwrap().len(), 10);
}
