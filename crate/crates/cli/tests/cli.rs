use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;
use treecover::format::{parse_instance, parse_strategy};
use treecover::hardness::{gen_lcsr, gen_tcs};

const STAR_PAIR: &str = "problem mlcp\nvertices 4\nedge 0 1\nedge 0 2\nedge 0 3\nrobots 2\nstarts 0 0\n";

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treecover"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field(out: &Output, key: &str) -> String {
    let text = stdout(out);
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
        .to_string()
}

fn workspace(files: &[(&str, &str)]) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in files {
        fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

#[test]
fn solve_examples() {
    let dir = workspace(&[
        ("star.txt", STAR_PAIR),
        ("path.txt", "problem mlcp\nvertices 3\nedge 0 1\nedge 1 2\nstarts 0 2\n"),
        ("mtcp.txt", "problem mtcp\nvertices 4\nedge 0 1\nedge 0 2\nedge 0 3\nstarts 0\n"),
    ]);
    let out = run(dir.path(), &["solve", "star.txt"]);
    assert!(out.status.success());
    assert_eq!(field(&out, "cost"), "4");
    assert_eq!(field(&out, "solver"), "dp-one-source");

    let out = run(dir.path(), &["solve", "path.txt", "--emit-strategy", "s.txt"]);
    assert_eq!(field(&out, "cost"), "1");
    assert_eq!(field(&out, "solver"), "dp-two-sources");
    let s = parse_strategy(&fs::read_to_string(dir.path().join("s.txt")).unwrap(), None).unwrap();
    assert_eq!(s.starts(), vec![0, 2]);
    assert_eq!(s.length(), 1);

    let out = run(dir.path(), &["solve", "mtcp.txt"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("use oracle: MTCP is NP-hard"));

    let out = run(dir.path(), &["solve", "mtcp.txt", "--solver", "oracle"]);
    assert!(out.status.success());
    assert_eq!(field(&out, "cost"), "5");
}

#[test]
fn three_distinct_starts_are_refused() {
    let dir = workspace(&[("i.txt", "problem mlcp\nvertices 4\nedge 0 1\nedge 0 2\nedge 0 3\nstarts 1 2 3\n")]);
    let out = run(dir.path(), &["solve", "i.txt"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("open problem"));
    // one leaf robot steps to the centre
    let out = run(dir.path(), &["oracle", "i.txt"]);
    assert_eq!(field(&out, "cost"), "1");
}

#[test]
fn oracle_examples() {
    let dir = workspace(&[
        ("t.txt", "problem mtcp\nvertices 4\nedge 0 1\nedge 0 2\nedge 0 3\nstarts 0\n"),
        ("l.txt", "problem mlcp\nvertices 4\nedge 0 1\nedge 0 2\nedge 0 3\nstarts 0\n"),
        ("r.txt", "problem mlcpr\nvertices 4\nedge 0 1\nedge 0 2\nedge 0 3\nstarts 0 0\nrendezvous 2\n"),
    ]);
    assert_eq!(field(&run(dir.path(), &["oracle", "t.txt"]), "cost"), "5");
    assert_eq!(field(&run(dir.path(), &["oracle", "l.txt"]), "cost"), "5");
    let out = run(dir.path(), &["oracle", "r.txt", "--emit-strategy", "w.txt"]);
    assert_eq!(field(&out, "cost"), "6");
    let out = run(dir.path(), &["verify", "r.txt", "w.txt"]);
    assert!(out.status.success(), "{}", stdout(&out));

    // the state cap is a hard error
    let out = run(dir.path(), &["oracle", "l.txt", "--max-states", "3"]);
    assert_eq!(out.status.code(), Some(5));
    // as is a tree beyond the oracle's size limit
    let gen = run(dir.path(), &["gen", "random", "--n", "80", "--seed", "1", "-o", "big.txt"]);
    assert!(gen.status.success());
    let out = run(dir.path(), &["oracle", "big.txt"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource limit"));
}

#[test]
fn verify_reports_named_failures() {
    let dir = workspace(&[
        ("star.txt", STAR_PAIR),
        ("missing.txt", "walk 0 1\nwalk 0 2\n"),
        ("rdv.txt", "problem mlcpr\nvertices 4\nedge 0 1\nedge 0 2\nedge 0 3\nstarts 0 0\nrendezvous 1\n"),
        ("apart.txt", "walk 0 1 0 3\nwalk 0 2 0 3\n"),
        ("jump.txt", "walk 0 1 2\nwalk 0 3\n"),
    ]);
    let out = run(dir.path(), &["verify", "star.txt", "missing.txt"]);
    assert_eq!(out.status.code(), Some(6));
    assert_eq!(field(&out, "check.coverage"), "fail: vertices not visited: 3");
    assert_eq!(field(&out, "result"), "fail");

    let out = run(dir.path(), &["verify", "rdv.txt", "apart.txt"]);
    assert_eq!(out.status.code(), Some(6));
    assert_eq!(field(&out, "check.rendezvous"), "fail: no meeting from step 1 to step 1");
    assert_eq!(field(&out, "check.coverage"), "pass");

    let out = run(dir.path(), &["verify", "star.txt", "jump.txt", "--structure"]);
    assert_eq!(out.status.code(), Some(6));
    assert!(field(&out, "check.walks").starts_with("fail"));
    assert!(field(&out, "check.structure").starts_with("skipped"));
}

#[test]
fn structure_checks_flag_wasteful_walks() {
    let dir = workspace(&[
        ("p2.txt", "problem mlcp\nvertices 2\nedge 0 1\nstarts 0\n"),
        ("w.txt", "walk 0 1 0 1\n"),
    ]);
    let out = run(dir.path(), &["verify", "p2.txt", "w.txt", "--structure"]);
    assert_eq!(out.status.code(), Some(6));
    assert_eq!(field(&out, "check.coverage"), "pass");
    assert!(field(&out, "check.path-once").starts_with("fail: robot 0 crosses path edge 0-1 3 times"));
}

#[test]
fn generated_reductions() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run(d, &["gen", "tcs", "--a", "3,3,3,3,3,3", "--b", "9", "-o", "tcs.txt", "--dot", "tcs.dot"]);
    assert!(out.status.success());
    assert_eq!(field(&out, "vertices"), "91");
    assert_eq!(field(&out, "budget"), "54");
    assert!(fs::read_to_string(d.join("tcs.dot")).unwrap().starts_with("graph tree {"));

    let out = run(d, &["gen", "lcsr", "--a", "3,3,3", "--b", "9", "-o", "lcsr.txt"]);
    assert_eq!(field(&out, "vertices"), "41");
    assert_eq!(field(&out, "rendezvous"), "20");
    assert_eq!(field(&out, "budget"), "80");

    // emitted files re-parse to the library's values
    let tcs = parse_instance(&fs::read_to_string(d.join("tcs.txt")).unwrap()).unwrap();
    assert_eq!(tcs.tree, gen_tcs(&[3; 6], 9).unwrap().tree);
    let lcsr = parse_instance(&fs::read_to_string(d.join("lcsr.txt")).unwrap()).unwrap();
    let expected = gen_lcsr(&[3; 3], 9).unwrap();
    assert_eq!(lcsr.tree, expected.tree);
    assert_eq!(lcsr.starts, vec![expected.start; 2]);
    assert_eq!(lcsr.name_of(expected.start), "v1");

    for (kind, a, inst) in [("tcs", "3,3,3,3,3,3", "tcs.txt"), ("lcsr", "3,3,3", "lcsr.txt")] {
        let out = run(d, &["witness", kind, "--a", a, "--b", "9", "-o", "w.txt"]);
        assert!(out.status.success());
        let out = run(d, &["verify", inst, "w.txt"]);
        assert!(out.status.success(), "{}", stdout(&out));
        assert_eq!(field(&out, "check.budget"), "pass");
    }

    let out = run(d, &["witness", "tcs", "--a", "3,3,3,3,3,3", "--b", "9", "--partition", "0,1,2,2,3,4"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(d, &["witness", "tcs", "--a", "6,6,6,6,7,9", "--b", "20"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(d, &["gen", "tcs", "--a", "3,3,4", "--b", "9"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn random_generation() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["gen", "random", "--n", "1"]);
    assert!(out.status.success());
    let inst = parse_instance(&stdout(&out)).unwrap();
    assert_eq!(inst.tree.len(), 1);
    assert_eq!(inst.starts, vec![0]);

    let a = stdout(&run(dir.path(), &["gen", "random", "--n", "12", "--seed", "9", "--shape", "spider"]));
    let b = stdout(&run(dir.path(), &["gen", "random", "--n", "12", "--seed", "9", "--shape", "spider"]));
    assert_eq!(a, b);
    let out = run(dir.path(), &["gen", "random", "--n", "3", "--starts", "5"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(dir.path(), &["gen", "random", "--n", "3", "--problem", "mtcpr"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn solve_output_verifies_with_structure() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for (seed, starts) in [(1, "0,0,0"), (2, "3,7"), (3, "4,4,9"), (4, "0")] {
        let gen = run(d, &["gen", "random", "--n", "25", "--seed", &seed.to_string(), "--starts", starts, "-o", "i.txt"]);
        assert!(gen.status.success());
        let out = run(d, &["solve", "i.txt", "--emit-strategy", "s.txt", "--dot", "s.dot"]);
        assert!(out.status.success());
        let cost = field(&out, "cost");
        let out = run(d, &["verify", "i.txt", "s.txt", "--structure"]);
        assert!(out.status.success(), "{}", stdout(&out));
        assert_eq!(field(&out, "length"), cost);
        assert_eq!(field(&out, "check.edge-directions"), "pass");
        assert!(fs::read_to_string(d.join("s.dot")).unwrap().contains("penwidth"));
    }
}

#[test]
fn parse_errors_are_positional() {
    let dir = workspace(&[
        ("bad.txt", "problem mlcp\nvertices 3\nedge 0 1\nedge 1 x\nstarts 0\n"),
        ("ok.txt", STAR_PAIR),
        ("bad-walk.txt", "walk 0 1\nwalk 0 zz\n"),
    ]);
    let out = run(dir.path(), &["solve", "bad.txt"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.txt: line 4, column 8"), "{err}");

    let out = run(dir.path(), &["verify", "ok.txt", "bad-walk.txt"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad-walk.txt: line 2, column 8"));

    let out = run(dir.path(), &["solve", "nope.txt"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(dir.path(), &["solve"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_and_quiet() {
    let dir = workspace(&[("star.txt", STAR_PAIR)]);
    let out = run(dir.path(), &["solve", "star.txt", "--format", "json", "--timing"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["cost"], 4);
    assert_eq!(v["problem"], "mlcp");
    assert!(v["digest"].as_str().unwrap().starts_with("sha256:"));
    assert!(v["wall_ms"].as_f64().unwrap() >= 0.0);

    let out = run(dir.path(), &["solve", "star.txt", "--quiet"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());

    let out = run(dir.path(), &["bench", "--sizes", "50,100", "--reps", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}
