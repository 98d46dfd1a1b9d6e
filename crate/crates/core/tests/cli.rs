mod common;

use std::io::Write;
use std::process::{Command, Stdio};

use aspback::EX1;
use common::{aspback, aspback_env, stdout, write_file};

#[test]
fn solve_enumerates_ex1() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_file(&dir, "ex1.lp", EX1);
    let o = aspback(&["solve", "--target", "horn", "--mode", "enumerate", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{t}\n");
}

#[test]
fn backdoor_of_ex1() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_file(&dir, "ex1.lp", EX1);
    let o = aspback(&["backdoor", "--target", "horn", "--minimize", f.to_str().unwrap()]);
    assert_eq!(stdout(&o), "r s\n");
    let o = aspback(&[
        "backdoor",
        "--target",
        "strat",
        "--kind",
        "deletion",
        "--k",
        "1",
        f.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&o), "w\n");
    let o = aspback(&["backdoor", "--k", "1", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn consistency_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let neg = write_file(&dir, "neg.lp", "x :- not x.  y.");
    let o = aspback(&["solve", "--mode", "consistency", neg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "inconsistent\n");
    let ok = write_file(&dir, "ok.lp", EX1);
    let o = aspback(&["solve", "--mode", "consistency", ok.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_aspback"))
        .args(["solve", "--mode", "count", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"a | b.  c :- a.  c :- b.")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "2\n");
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(&dir, "bad.lp", "a :- b,\n  not .");
    let o = aspback(&["parse", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:3"));
    assert_eq!(aspback(&["parse", "/nonexistent/file.lp"]).status.code(), Some(2));
    assert_eq!(
        aspback(&["backdoor", "--k", "1", "--minimize", "x"]).status.code(),
        Some(2)
    );
}

#[test]
fn json_outputs_parse() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_file(&dir, "ex1.lp", EX1);
    let f = f.to_str().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&aspback(&["classify", "--format", "json", f]))).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 6);
    let v: serde_json::Value = serde_json::from_str(&stdout(&aspback(&["stats", "--format", "json", f, f]))).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["stdev"], 0.0);
    assert_eq!(v["target"], "horn");
    assert!(v["version"].is_string());
}

#[test]
fn gen_writes_headers_and_honours_seed_env() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = aspback_env(
        &["gen", "random", "--atoms", "8", "--count", "2", "--out", out],
        &[("ASPBACK_SEED", "5")],
    );
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("random-0001.lp")).unwrap();
    assert!(
        text.starts_with("% gen: random n=8 density=3 body_len=2 neg_prob=0.5 seed=5 stream=1"),
        "{text}"
    );
    let o = aspback(&[
        "stats",
        dir.path().join("random-0000.lp").to_str().unwrap(),
        dir.path().join("random-0001.lp").to_str().unwrap(),
    ]);
    assert!(stdout(&o).contains("over 2 instances"));
}

#[test]
fn hitting_set_generation() {
    let dir = tempfile::tempdir().unwrap();
    let h = write_file(&dir, "h.txt", "1 2\n2 3\nk=1\n");
    let prog = dir.path().join("hs.lp");
    let o = aspback(&["gen", "hitting-set", h.to_str().unwrap()]);
    std::fs::write(&prog, stdout(&o)).unwrap();
    let o = aspback(&[
        "backdoor",
        "--target",
        "c-acyc",
        "--engine",
        "brute",
        "--k",
        "1",
        prog.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = aspback(&["parse", "--format", "json", prog.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["atoms"].as_u64(), v["rules"].as_u64()), (Some(11), Some(8)));
}

#[test]
fn graph_exports_dot() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_file(&dir, "ex1.lp", EX1);
    for kind in ["ddg", "udg", "incidence"] {
        let o = aspback(&["graph", "--kind", kind, f.to_str().unwrap()]);
        let dot = stdout(&o);
        assert!(dot.contains("graph"), "{kind}: {dot}");
        assert!(dot.trim_end().ends_with('}'));
    }
}
