use std::io::Write;
use std::process::{Command, Output, Stdio};

fn stacker(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stacker")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn normalize() {
    let o = stacker(&["normalize", "--group", "bs12", "aat"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "ta"));
    let o = stacker(&["normalize", "--group", "gp", "--p", "2", "aa"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, ""));
    assert_eq!(code(&stacker(&["normalize", "--group", "bs12", "aq"])), 2);
    assert_eq!(code(&stacker(&["normalize", "--group", "gp", "aa"])), 2);
    assert_eq!(code(&stacker(&["normalize", "--group", "gp", "--p", "1", "aa"])), 2);
}

#[test]
fn normalize_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_stacker"))
        .args(["normalize", "--group", "bs12"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"aat\n\ntT\naaT\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "ta\n\nTaaaa\n");
}

#[test]
fn budget_exit_code() {
    let o = Command::new(env!("CARGO_BIN_EXE_stacker"))
        .args(["normalize", "--group", "gp", "--p", "inf", "TTTTAAs"])
        .env("STACKER_STEP_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn word_problem() {
    let o = stacker(&["wp", "--group", "bg", "saS", "t"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "EQUAL"));
    // s a s s⁻¹ freely reduces to s a
    let o = stacker(&["wp", "--group", "bg", "sasS", "t"]);
    assert_eq!((code(&o), stdout(&o).trim()), (1, "DISTINCT"));
    let o = stacker(&["wp", "--group", "gp", "--p", "3", "a", "aa"]);
    assert_eq!((code(&o), stdout(&o).trim()), (1, "DISTINCT"));
    let o = stacker(&["wp", "--group", "bs12", "", ""]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "EQUAL"));
}

#[test]
fn verify() {
    let o = stacker(&["verify", "--group", "gp", "--p", "2", "--radius", "6", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failures"], serde_json::json!([]));
    assert_eq!(code(&stacker(&["verify", "--group", "bs12", "--radius", "8"])), 0);
    let o = stacker(&["verify", "--group", "bg", "--radius", "3", "--samples", "300", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_ne!(code(&stacker(&["verify", "--group", "bs12", "--radius", "3", "--mutant"])), 0);
    assert_eq!(code(&stacker(&["verify", "--group", "bs12", "--radius", "0"])), 2);
}

#[test]
fn automata() {
    let o = stacker(&["fsa", "--group", "gp", "--p", "2", "nf", "--format", "dot"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("digraph"));
    let o = stacker(&["fsa", "--group", "gp", "--p", "2", "graphphi", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["states"].as_u64().unwrap() > 1);
    assert_eq!(code(&stacker(&["fsa", "--group", "gp", "--p", "inf", "graphphi"])), 4);
    assert_eq!(code(&stacker(&["fsa", "--group", "gp", "--p", "3", "ntilde:1,-1"])), 0);
    assert_eq!(code(&stacker(&["fsa", "--group", "gp", "--p", "2", "piece:7"])), 0);
    assert_eq!(code(&stacker(&["fsa", "--group", "gp", "--p", "2", "piece:16"])), 2);
    assert_eq!(code(&stacker(&["fsa", "--group", "bs12", "graphphi"])), 4);
}

#[test]
fn diagrams() {
    let o = stacker(&["diagram", "--group", "bs12", "aa", "t", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["area"].as_u64().unwrap() >= 1);
    let o = stacker(&["diagram", "--group", "gp", "--p", "2", "", "a", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["kind"].as_str(), v["area"].as_u64()), (Some("degenerate"), Some(0)));
    let o = stacker(&["diagram", "--group", "bg", "a", "s", "--format", "dot"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("digraph"));
    assert_eq!(code(&stacker(&["diagram", "--group", "bs12", "a", "tt"])), 2);
}
