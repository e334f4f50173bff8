use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_minmodal"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn prove_exit_codes() {
    assert_eq!(code(&run(&["prove", "MK", "box (p -> q) -> box p -> box q"])), 0);
    assert_eq!(code(&run(&["refute", "G1MK", "bot -> p"])), 1);
    assert_eq!(code(&run(&["--budget", "2", "prove", "MK", "(p -> q) -> (q -> r) -> p -> r"])), 2);
    assert_eq!(code(&run(&["prove", "NOPE", "p"])), 3);
    assert_eq!(code(&run(&["prove", "MK", "p ->"])), 3);
    assert_eq!(code(&run(&["frobnicate"])), 3);
}

#[test]
fn prove_reads_stdin_and_emits_json() {
    let mut child = bin()
        .args(["--json", "prove", "CK"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"bot -> p\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outcome"], "proved");
    assert_eq!(v["calculus"], "G1CK");
    assert!(v["derivation"].is_object());
}

#[test]
fn emitted_derivations_check() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["d.txt", "d.json"] {
        let path = dir.path().join(name);
        let p = path.to_str().unwrap();
        let o = run(&["prove", "MMC", "box p & box q -> box (p & q)", "--emit-derivation", p]);
        assert_eq!(code(&o), 0);
        assert_eq!(code(&run(&["check-derivation", "G1MMC", p])), 0);
        // The C□ step is not available in plain G1MM.
        let o = run(&["--json", "check-derivation", "G1MM", p]);
        assert_eq!(code(&o), 1);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["valid"], false);
    }
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "p => p  [nope]\n").unwrap();
    assert_eq!(code(&run(&["check-derivation", "G1MK", bad.to_str().unwrap()])), 3);
}

#[test]
fn trace_output() {
    let o = run(&["prove", "MK", "p -> p", "--emit-trace"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().count() > 2);
}

#[test]
fn countermodel_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let p = path.to_str().unwrap();
    let o = run(&["countermodel", "MK", "bot -> p", "--out", p]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&run(&["check-model", p, "--logic", "MK"])), 0);
    // The fallible point violates condition (iii) of constructive models.
    let o = run(&["check-model", p, "--logic", "CK"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("(iii)"));
    assert_eq!(code(&run(&["eval-model", p, "bot -> p"])), 1);
    assert_eq!(code(&run(&["eval-model", p, "p -> p"])), 0);
    assert_eq!(code(&run(&["countermodel", "CK", "bot -> p"])), 1);
    assert_eq!(code(&run(&["eval-model", p, "p", "--world", "nowhere"])), 3);
}

#[test]
fn eval_model_worlds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(
        &path,
        r#"{"kind":"birelational","worlds":["a","b"],"leq":[[0,1]],"fallible":[],"R":[[0,1]],"valuation":{"p":[1]}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&run(&["eval-model", p, "box p", "--world", "a"])), 0);
    assert_eq!(code(&run(&["eval-model", p, "p", "--world", "a"])), 1);
    let o = run(&["--json", "eval-model", p, "p"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["truth_set"], serde_json::json!(["b"]));
}

#[test]
fn translate_and_axioms() {
    let o = run(&["translate", "bot"]);
    assert_eq!(stdout(&o).trim(), "box1 f");
    let o = run(&["translate", "--scheme", "g", "bot"]);
    assert_eq!(stdout(&o).trim(), "box1 bot");
    assert_eq!(code(&run(&["translate", "--scheme", "x", "p"])), 3);
    let o = run(&["axioms", "MMT"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Tbox"));
    assert_eq!(code(&run(&["axioms", "MQ"])), 3);
}

#[test]
fn relate_and_companion() {
    let o = run(&["--json", "relate", "MK", "~(box p & dia ~p)"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let vs: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["verdict"].as_str().unwrap()).collect();
    assert_eq!(vs, ["refuted", "refuted", "proved", "proved"]);
    let o = run(&["companion-check", "MK", "bot -> p", "--max-worlds", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("consistent"));
    assert_eq!(code(&run(&["companion-check", "K", "p"])), 3);
}

#[test]
fn batch_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("jobs.txt");
    std::fs::write(&path, "").unwrap();
    let o = run(&["batch", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["jobs"], serde_json::json!([]));
    std::fs::write(&path, "prove MK p -> p\nrefute MK bot -> p\nprove MK (p\n").unwrap();
    let o = run(&["batch", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["errors"], 1);
    assert_eq!(v["jobs"][1]["result"]["verdict"], "refuted");
    assert_eq!(v["jobs"][2]["status"], "error");
}
