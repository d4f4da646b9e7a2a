use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn jobs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/jobs")
}

fn run(job: &Path, extra: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tseq"))
        .arg("--catalog")
        .arg(jobs_dir().join("catalog.json"))
        .arg("--job")
        .arg(job)
        .args(extra)
        .output()
        .expect("binary runs")
}

fn json_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json") && !p.ends_with("catalog.json"))
        .collect();
    files.sort();
    files
}

fn result(name: &str) -> Value {
    let out = run(&jobs_dir().join(name), &[]);
    assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["result"].clone()
}

#[test]
fn every_job_succeeds_deterministically() {
    let jobs = json_files(&jobs_dir());
    assert!(jobs.len() >= 13);
    for job in jobs {
        let (a, b) = (run(&job, &[]), run(&job, &[]));
        assert!(a.status.success(), "{}: {}", job.display(), String::from_utf8_lossy(&a.stdout));
        assert_eq!(a.stdout, b.stdout, "{}", job.display());
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        assert!(v["command"].is_string() && v["anchor"].is_string());
    }
}

#[test]
fn error_jobs_report_codes() {
    let expected = [
        ("identity_target.json", "IdentityTarget"),
        ("parity.json", "ParityDecompositionUnavailable"),
        ("strict.json", "UnsupportedExactDecision"),
        ("unknown_command.json", "UnknownCommand"),
        ("unresolved.json", "UnresolvedSequenceId"),
    ];
    for (file, code) in expected {
        let out = run(&jobs_dir().join("errors").join(file), &[]);
        assert_eq!(out.status.code(), Some(1), "{file}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["error"]["code"], code, "{file}");
    }
}

#[test]
fn eleven_is_excluded_exactly() {
    let r = result("member_eleven.json");
    assert_eq!(r["verdict"], "notIn");
}

#[test]
fn three_is_a_sum() {
    assert_eq!(result("member_three.json")["verdict"], "in");
}

#[test]
fn quotient_of_vectors() {
    let r = result("quotient_vectors.json");
    let text = r.to_string();
    assert!(text.contains("\"14\""), "{text}");
}

#[test]
fn case_studies_pass() {
    assert_eq!(result("exa1.json")["passed"], true);
    assert_eq!(result("ex11.json")["passed"], true);
    assert_eq!(result("product_split.json")["passed"], true);
}

#[test]
fn text_format_and_overrides() {
    let job = jobs_dir().join("member_three.json");
    let out = run(&job, &["--format", "text"]);
    assert!(out.status.success());
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_err());
    let out = run(&job, &["--tail-depth", "3", "--budget-nodes", "5000"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["budgets"]["tailDepth"], 3);
}

#[test]
fn missing_files_fail() {
    let out = run(&jobs_dir().join("no_such_job.json"), &[]);
    assert!(!out.status.success());
}
