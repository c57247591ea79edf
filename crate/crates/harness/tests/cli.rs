use std::fs;
use std::process::Command;

fn qas(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qas")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn search_and_replay() {
    let (code, out, _) = qas(&["search", "--target", "bell", "--depth", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("H(0); CNOT(0,1)"));
    let (code, out, _) = qas(&["search", "--target", "bell", "--depth", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("not found"));
    let (code, out, _) = qas(&["replay", "--circuit", "H(0); CNOT(0,1)", "--p-gate", "0.001"]);
    assert_eq!(code, 0);
    assert!(out.contains("noise-free fidelity: 1.000000000000"));
    assert!(out.contains("noisy fidelity: 0.99"));
}

#[test]
fn exit_codes() {
    assert_eq!(qas(&["nonsense"]).0, 1);
    assert_eq!(qas(&["--help"]).0, 0);
    assert_eq!(qas(&["run", "--episodes", "0"]).0, 1);
    assert_eq!(qas(&["run", "--algo", "dqn"]).0, 1);
    assert_eq!(qas(&["replay", "--circuit", "H(7)"]).0, 1);
    assert_eq!(qas(&["search", "--depth", "9"]).0, 1);
    assert_eq!(qas(&["run", "--target", "/nonexistent.txt"]).0, 1);
    let (code, _, err) = qas(&["plot", "--summary", "/nonexistent.csv", "--out", "/tmp/x.svg"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
}

#[test]
fn run_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let out = dir.path().join("out");
    let (_, preset, _) = qas(&["config", "--preset", "bell"]);
    fs::write(&cfg, preset).unwrap();
    let (code, stdout, stderr) = qas(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--episodes",
        "20",
        "--seeds",
        "1,2",
        "--p-gate",
        "0.001",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stderr}");
    assert!(stdout.contains("seed   2"));
    for f in ["seed_1.csv", "seed_2.csv", "summary.csv", "summary.svg", "circuits.txt"] {
        assert!(out.join(f).exists(), "{f}");
    }
}
