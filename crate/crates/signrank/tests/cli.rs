use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }
}

fn signrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_signrank"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

const GENERIC_THREE: &str = "1 0 0 +\n0 1 0 +\n1 1 -1 +\n";

#[test]
fn minrank2_all_plus() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", "+++\n+++\n+++\n");
    let o = signrank(&["minrank2", m.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("YES\n"), "{out}");
    assert!(out.contains("x: 1 1 1"));
    assert!(out.contains("column 2:"));
}

#[test]
fn minrank2_negative_prints_reason() {
    let ws = Workspace::new();
    let m = ws.file("id.txt", "+00\n0+0\n00+\n");
    let o = signrank(&["minrank2", m.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("reason: step"));
    let o = signrank(&["--format", "json", "minrank2", m.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["decision"], "no");
}

#[test]
fn witness_rationals_are_exact() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", "++-\n+-+\n+++\n");
    let o = signrank(&["--format", "json", "minrank2", m.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    for y in v["witness"]["y"].as_array().unwrap() {
        let s = y.as_str().unwrap();
        assert!(!s.contains('.'), "{s}");
    }
}

#[test]
fn covectors_of_three_generic_lines() {
    let ws = Workspace::new();
    let a = ws.file("arr.txt", GENERIC_THREE);
    let o = signrank(&["covectors", a.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("counts 3 9 7\n"));
    let o = signrank(&["--format", "json", "covectors", a.to_str().unwrap()]);
    assert_eq!(json(&o)["counts"], serde_json::json!([3, 9, 7]));
}

#[test]
fn json_arrangement_input() {
    let ws = Workspace::new();
    let a = ws.file(
        "arr.json",
        r#"[{"a":"1","b":"0","c":"0","orient":"+"},{"a":"0","b":"1","c":"-1/2","orient":"-"}]"#,
    );
    let o = signrank(&["covectors", a.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("counts 1 4 4\n"));
}

#[test]
fn oracle_size_limit() {
    let ws = Workspace::new();
    let m = ws.file("big.txt", &"++\n".repeat(8));
    let o = signrank(&["oracle", m.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("at most 7 rows"), "{}", stderr(&o));
    let o = signrank(&["--limit", "8", "oracle", m.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = signrank(&["--limit", "0", "oracle", m.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn minrank2_and_oracle_agree() {
    let ws = Workspace::new();
    for (k, text) in [
        "+-\n-+\n",
        "+00\n0+0\n00+\n",
        "0+\n++\n",
        "+++-\n++-+\n+-++\n-+++\n",
        "+0-\n-0+\n000\n",
        "0+-\n00+\n+++\n",
    ]
    .iter()
    .enumerate()
    {
        let m = ws.file(&format!("m{k}.txt"), text);
        let a = code(&signrank(&["minrank2", m.to_str().unwrap()]));
        let b = code(&signrank(&["oracle", m.to_str().unwrap()]));
        assert_eq!(a, b, "{text}");
    }
}

#[test]
fn minrank_small_and_maxrank() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", "+-\n-+\n");
    assert_eq!(code(&signrank(&["minrank-small", "-r", "1", m.to_str().unwrap()])), 0);
    assert_eq!(code(&signrank(&["minrank-small", "-r", "0", m.to_str().unwrap()])), 1);
    assert_eq!(code(&signrank(&["minrank-small", "-r", "2", m.to_str().unwrap()])), 2);
    let o = signrank(&["maxrank", m.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("2\n"));
}

#[test]
fn reduce_outputs() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", "0+\n++\n");
    let o = signrank(&["reduce", m.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, ["+-+", "+++"]);
    let m = ws.file("z.txt", "00\n00\n");
    assert!(stdout(&signrank(&["reduce", m.to_str().unwrap()])).contains("ALL-ZERO"));
    let m = ws.file("gt.txt", "+00\n0+0\n00+\n");
    let o = signrank(&["reduce", m.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("GT2"));
}

#[test]
fn reconstruct_crossing_pair() {
    let ws = Workspace::new();
    let c = ws.file("c2.txt", "n=2\n++\n+-\n-+\n--\n");
    let o = signrank(&["reconstruct", c.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "C0 1\n00\nC1 4\n-0\n0-\n0+\n+0\n");
}

#[test]
fn arrangement_matrices_verify() {
    let ws = Workspace::new();
    let a = ws.file("arr.txt", GENERIC_THREE);
    for (construction, rows, cols) in [("main", 19, 4), ("main2", 7, 3)] {
        let o = signrank(&["reduce-arrangement", construction, a.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        let s = stdout(&o);
        assert_eq!(s.lines().count(), rows);
        assert!(s.lines().all(|l| l.len() == cols));

        let o = signrank(&["--format", "json", "reduce-arrangement", construction, a.to_str().unwrap()]);
        let v = json(&o);
        assert_eq!(v["matrix"].as_str().unwrap(), s);
        let m = ws.file("s.txt", &s);
        let p = ws.file("p.txt", v["points"].as_str().unwrap());
        let l = ws.file("l.txt", v["lines"].as_str().unwrap());
        let o = signrank(&["verify-witness", m.to_str().unwrap(), p.to_str().unwrap(), l.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert_eq!(stdout(&o), "VALID\n");

        let mut flipped: Vec<char> = s.chars().collect();
        flipped[0] = if flipped[0] == '+' { '-' } else { '+' };
        let m = ws.file("bad.txt", &flipped.into_iter().collect::<String>());
        let o = signrank(&["verify-witness", m.to_str().unwrap(), p.to_str().unwrap(), l.to_str().unwrap()]);
        assert_eq!(code(&o), 1);
    }
}

#[test]
fn main2_rejects_concurrent_lines() {
    let ws = Workspace::new();
    let a = ws.file("arr.txt", "1 0 0 +\n0 1 0 +\n1 1 0 +\n");
    let o = signrank(&["reduce-arrangement", "main2", a.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("uniform"));
}

#[test]
fn input_errors() {
    let ws = Workspace::new();
    let bad = ws.file("bad.txt", "+x\n");
    let o = signrank(&["minrank2", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("bad.txt"));
    let ragged = ws.file("ragged.txt", "++\n+\n");
    assert_eq!(code(&signrank(&["maxrank", ragged.to_str().unwrap()])), 2);
    assert_eq!(code(&signrank(&["maxrank", "/nonexistent/file"])), 2);
    assert_eq!(code(&signrank(&["frobnicate"])), 2);
    let arr = ws.file("parallel.txt", "1 0 0 +\n2 0 1 +\n");
    let o = signrank(&["covectors", arr.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("parallel"));
}

#[test]
fn selftest_passes() {
    let o = signrank(&["--seed", "4", "selftest"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    let o = signrank(&["--format", "json", "selftest"]);
    assert_eq!(json(&o)["passed"], true);
}
