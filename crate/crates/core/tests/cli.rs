use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qboson::cli::{PhiFile, ReportFile};

fn qboson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qboson"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "0")
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn construct(dir: &Path, name: &str, spec: [&str; 4], seed: &str) -> PathBuf {
    let path = dir.join(name);
    let [d_a, d_b, k, m] = spec;
    let out = qboson(&["construct", d_a, d_b, k, m, "--seed", seed, "--out", path_str(&path)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn rewrite(path: &Path, edit: impl FnOnce(&mut PhiFile)) {
    let mut file = PhiFile::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    edit(&mut file);
    std::fs::write(path, file.to_json()).unwrap();
}

#[test]
fn construct_then_verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let phi = construct(dir.path(), "phi.json", ["5", "6", "2", "2"], "3");
    let out = qboson(&["verify", path_str(&phi), "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = ReportFile::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert!(report.overall_passed);
    assert_eq!(report.metadata.timestamp, "1970-01-01T00:00:00Z");

    let auto = qboson(&["verify", path_str(&phi), "--auto-f"]);
    assert_eq!(auto.status.code(), Some(0));
}

#[test]
fn duplicated_mode_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let phi = construct(dir.path(), "phi.json", ["4", "4", "2", "2"], "1");
    rewrite(&phi, |f| f.matrices[1] = f.matrices[0].clone());
    let out = qboson(&["verify", path_str(&phi), "--m", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let report = ReportFile::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert!(!report.overall_passed);
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAILED normalization"));
}

#[test]
fn auto_f_flags_a_perturbed_mode() {
    let dir = tempfile::tempdir().unwrap();
    let phi = construct(dir.path(), "phi.json", ["4", "4", "2", "2"], "8");
    rewrite(&phi, |f| {
        for row in &mut f.matrices[1] {
            for z in row {
                z[0] *= 1.01;
                z[1] *= 1.01;
            }
        }
    });
    let out = qboson(&["verify", path_str(&phi), "--auto-f"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("f mismatch across modes"));
    let report = ReportFile::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let check = report
        .checks
        .iter()
        .find(|c| c.name == "f consistency across modes")
        .unwrap();
    assert!(!check.passed);
    assert!(check.context.contains("f mismatch across modes"));
}

#[test]
fn infeasible_and_malformed_inputs() {
    let out = qboson(&["construct", "2", "5", "3", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty solution set"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"d_a": 2, "d_b": 2, "matrices": [[[[1, 0]]]]}"#).unwrap();
    assert_eq!(qboson(&["verify", path_str(&bad), "--m", "1"]).status.code(), Some(1));
    let missing = dir.path().join("missing.json");
    assert_eq!(qboson(&["verify", path_str(&missing), "--m", "1"]).status.code(), Some(1));
    assert_eq!(qboson(&["verify", path_str(&bad)]).status.code(), Some(1));
    assert_eq!(qboson(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn construct_is_deterministic_per_seed() {
    let a = qboson(&["construct", "6", "6", "2", "3", "--seed", "5"]);
    let b = qboson(&["construct", "6", "6", "2", "3", "--seed", "5"]);
    let c = qboson(&["construct", "6", "6", "2", "3", "--seed", "6"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn nogo_random_ensemble_passes() {
    let out = qboson(&["nogo", "--random", "100", "4", "0", "--q", "0.5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = ReportFile::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(report.checks.len(), 100);
    assert_eq!(report.metadata.seed, Some(0));
}

#[test]
fn nogo_rank_one_family_is_nilpotent() {
    let dir = tempfile::tempdir().unwrap();
    let phi = construct(dir.path(), "phi.json", ["3", "3", "1", "1"], "2");
    let out = qboson(&["nogo", "--family", path_str(&phi), "--q", "0.9"]);
    assert_eq!(out.status.code(), Some(0));
    let report = ReportFile::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert!(report.checks.iter().all(|c| c.context.starts_with("nilpotency branch")));
}

#[test]
fn nogo_rejects_q_one() {
    let out = qboson(&["nogo", "--random", "5", "3", "0", "--q", "1.0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q=1 is not a deformation"));
}

#[test]
fn table_prints_quadratic_rows() {
    let out = qboson(&["table", "quadratic", "0.5", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    let phi3: f64 = text.lines().nth(4).unwrap().split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((phi3 - 1.5).abs() < 1e-12);
}
