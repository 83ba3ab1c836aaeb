use conicmin::cli::{run, RunManifest};
use conicmin::conic::{degree_stats, parse_conic};
use std::path::Path;
use std::process::Command;

const SAMPLE: &str = "vars: t1,t2\na: 1\nb: 1\nc: -9*t1^2*(t2 + 1)^3\nd: 0\ne: 0\nf: 0\n";

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut full = vec!["conicmin"];
    full.extend_from_slice(args);
    let code = run(full, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn sample(dir: &Path) -> String {
    let p = dir.join("in.conic");
    std::fs::write(&p, SAMPLE).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn minimise_writes_artifacts_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let input = sample(dir.path());
    let prefix = dir.path().join("run");
    let prefix = prefix.to_str().unwrap();
    let (code, out) = call(&["minimise", &input, "--random-prob", "0", "--out", prefix]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("success"));
    let min = parse_conic(&std::fs::read_to_string(format!("{prefix}.min.conic")).unwrap()).unwrap();
    assert_eq!(degree_stats(&min).unwrap().deg_score, 0);
    let manifest = RunManifest::parse(&std::fs::read_to_string(format!("{prefix}.manifest")).unwrap());
    assert_eq!(manifest.get("outcome"), Some("success"));
    assert_eq!(manifest.get("random_prob"), Some("0"));
    assert_eq!(manifest.get("transcript_sha256").map(str::len), Some(64));

    let log = format!("{prefix}.log");
    let expect = format!("{prefix}.min.conic");
    let (code, out) = call(&["verify", &input, &log, "--expect", &expect]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("ok:"));

    // a tampered log is rejected
    let text = std::fs::read_to_string(&log).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let last = lines.iter().rposition(|l| l.starts_with("L: ")).unwrap();
    lines[last] = "L: 7 ; 1 ; 1 ; 0 ; 0 ; 0";
    let bad = lines.join("\n") + "\n";
    std::fs::write(&log, bad).unwrap();
    let (code, _) = call(&["verify", &input, &log]);
    assert_eq!(code, 1);
}

#[test]
fn transcripts_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let input = sample(dir.path());
    let mut digests = Vec::new();
    for (i, jobs) in ["1", "1", "4"].iter().enumerate() {
        let prefix = dir.path().join(format!("r{i}"));
        let prefix = prefix.to_str().unwrap();
        let (code, _) = call(&["minimise", &input, "--seed", "3", "--jobs", jobs, "--out", prefix]);
        assert_eq!(code, 0);
        digests.push(std::fs::read(format!("{prefix}.transcript")).unwrap());
    }
    assert_eq!(digests[0], digests[1]);
    assert_eq!(digests[0], digests[2]);
}

#[test]
fn target_shape_report() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.conic");
    std::fs::write(&p, "vars: g,h\na: 4\nb: -20\nc: -4*g*h - 4\nd: 0\ne: 0\nf: 0\n").unwrap();
    let prefix = dir.path().join("t");
    let (code, out) = call(&["minimise", p.to_str().unwrap(), "--target-d", "5", "--out", prefix.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("beta/(-D*alpha): 1 (a square)"), "{out}");
    assert!(out.contains("candidate q = -gamma/alpha: g*h + 1"), "{out}");
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.conic");
    std::fs::write(&bad, "vars: g,h\na: 1 +\n").unwrap();
    assert_eq!(call(&["minimise", bad.to_str().unwrap()]).0, 2);
    assert_eq!(call(&["minimise", "/no/such/file"]).0, 2);
    assert_eq!(call(&["minimise", "x", "--random-prob", "2"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["fixtures", "q99"]).0, 2);
}

#[test]
fn mestre_fixtures_and_analysis() {
    let (code, out) = call(&["fixtures", "q5"]);
    assert_eq!((code, out.trim()), (0, "-900*g^2 - 390*g - 36"));
    let (code, all) = call(&["fixtures"]);
    assert_eq!(code, 0);
    assert_eq!(all.lines().count(), 23);

    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("ic");
    let (code, out) = call(&["mestre", "--model", "ic", "--out", prefix.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let src = format!("{}.source.conic", prefix.display());
    let log = format!("{}.log", prefix.display());
    let end = format!("{}.conic", prefix.display());
    let (code, out) = call(&["verify", &src, &log, "--expect", &end]);
    assert_eq!(code, 0, "{out}");

    let (code, out) = call(&["mestre", "--ic", "20,-20,-1,8", "--model", "base"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("vars: \n") || out.starts_with("vars:"), "{out}");
    let (code, _) = call(&["mestre", "--ek", "1,0,1,1,1"]);
    assert_eq!(code, 2);

    let (code, out) = call(&["analyze", "lambda40"]);
    assert_eq!(code, 0);
    assert!(out.contains("15*g^2 - 14*h^2 - 10*g - 5"), "{out}");
    let (code, out) = call(&["analyze", "lambda21", "--with", "q21"]);
    assert_eq!(code, 0);
    assert!(out.contains("746496*(27*h^2 - 1)^2*(3*h^4 + 27*h^2 - 25)^2"), "{out}");
}

#[test]
fn step_script_and_binary() {
    let dir = tempfile::tempdir().unwrap();
    let input = sample(dir.path());
    let save = dir.path().join("s");
    let script = dir.path().join("script.txt");
    std::fs::write(&script, format!("actions\n1\npatch 2\nsave {}\nquit\n", save.display())).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_conicmin"))
        .args(["step", &input, "--script", script.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("wrote"), "{text}");
    let log = format!("{}.log", save.display());
    let end = format!("{}.conic", save.display());
    let (code, out) = call(&["verify", &input, &log, "--expect", &end]);
    assert_eq!(code, 0, "{out}");

    let env_run = Command::new(env!("CARGO_BIN_EXE_conicmin"))
        .args(["minimise", &input, "--out", dir.path().join("e").to_str().unwrap()])
        .env("CONICMIN_SEED", "11")
        .env("CONICMIN_SCORE", "node")
        .output()
        .unwrap();
    assert_eq!(env_run.status.code(), Some(0));
    let m = RunManifest::parse(&std::fs::read_to_string(dir.path().join("e.manifest")).unwrap());
    assert_eq!(m.get("seed"), Some("11"));
    assert_eq!(m.get("score"), Some("node"));
}
