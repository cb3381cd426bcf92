use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gamma2lab::boolmat::parse_bmx;
use gamma2lab::BoolMatrix;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gamma2lab"));
    c.env_remove("GAMMA2LAB_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, m: &BoolMatrix) -> PathBuf {
    let p = dir.path().join(name);
    m.save_bmx(&p).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/analysis_report.schema.json");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&v).unwrap()
}

fn analyze(args: &[&str]) -> Value {
    let mut full = vec!["analyze"];
    full.extend_from_slice(args);
    let v: Value = serde_json::from_str(&ok(&full)).unwrap();
    let errors: Vec<String> = schema().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}\n{v:#}");
    v
}

fn num(v: &Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn gen_pmodp_has_q_ones_per_line() {
    let text = ok(&["gen", "pmodp", "--q", "3", "--p", "5"]);
    let m = parse_bmx(&text).unwrap();
    assert_eq!((m.rows(), m.cols(), m.count_ones()), (15, 15, 45));
}

#[test]
fn gen_random_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.bmx");
    let b = dir.path().join("b.bmx");
    for p in [&a, &b] {
        ok(&["gen", "random", "--m", "8", "--n", "8", "--density", "0.5", "--seed", "7", "--out", s(p)]);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let other = ok(&["gen", "random", "--m", "8", "--n", "8", "--density", "0.5", "--seed", "8"]);
    assert_ne!(other.as_bytes(), std::fs::read(&a).unwrap());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["gen", "pmodp", "--q", "9", "--p", "5"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "nosuchfamily"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "pmodp", "--q", "2"]).status.code(), Some(2));
    assert_eq!(run(&["experiment", "nosuchexperiment"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "/nonexistent/file.bmx"]).status.code(), Some(2));
}

#[test]
fn parse_failure_names_the_line() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.bmx");
    std::fs::write(&p, "3 3 2\n0 0\n1 q\n").unwrap();
    let out = run(&["analyze", s(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn analyze_identity_exact() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "i3.bmx", &BoolMatrix::identity(3).unwrap());
    let v = analyze(&[s(&p), "--exact", "--blocky"]);
    assert!((num(&v["gamma2"]["exact"]) - 1.0).abs() < 1e-5);
    assert_eq!(v["degeneracy"], 1);
    assert_eq!(v["blocky"]["terms"], 1);
    assert_eq!(v["blocky"]["is_blocky"], true);
    assert!(v["discrepancy"].is_null());

    let mut broken = v.clone();
    broken["gamma2"]["exact"] = Value::from("about one");
    assert!(!schema().is_valid(&broken));
    broken = v;
    broken.as_object_mut().unwrap().remove("degeneracy");
    assert!(!schema().is_valid(&broken));
}

#[test]
fn analyze_pmodp() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.bmx", &gamma2lab::constructions::gen_p_modp(3, 5).unwrap());
    let v = analyze(&[s(&p), "--disc", "--certs"]);
    assert_eq!(v["four_cycle_free"], true);
    assert_eq!(v["degeneracy"], 3);
    assert!(num(&v["gamma2"]["upper"]) <= 2.0 * 3f64.sqrt() + 1e-9);
    assert!(num(&v["gamma2"]["lower"]) <= num(&v["gamma2"]["upper"]));
    assert!(v["gamma2"]["exact"].is_null());
    assert!(v["discrepancy"]["disc"].as_u64().unwrap() >= 1);
    assert!(v["certificates"]["upper"]["parts"].is_array());
}

#[test]
fn analyze_large_skips_exact_and_disc() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "r.bmx", &BoolMatrix::random(40, 40, 0.2, 1).unwrap());
    let v = analyze(&[s(&p), "--exact", "--disc"]);
    assert!(v["gamma2"]["exact"].as_str().unwrap().starts_with("skipped: "));
    assert!(v["discrepancy"].as_str().unwrap().starts_with("skipped: "));
    // a raised cap lets the solver through
    let small = write(&dir, "s.bmx", &BoolMatrix::random(6, 5, 0.5, 2).unwrap());
    let v = analyze(&[s(&small), "--exact", "--max-exact-dim", "4"]);
    assert!(v["gamma2"]["exact"].as_str().unwrap().starts_with("skipped: "));
    let v = analyze(&[s(&small), "--exact", "--max-exact-dim", "5"]);
    assert!(num(&v["gamma2"]["exact"]) >= 1.0);
}

#[test]
fn experiments_are_deterministic() {
    let a = ok(&["experiment", "c4sandwich", "--p", "5,7"]);
    let b = ok(&["experiment", "c4sandwich", "--p", "5,7"]);
    assert_eq!(a, b);
    let header = a.lines().find(|l| !l.starts_with('#')).unwrap();
    assert!(header.starts_with("p,q,dgc,"));
    assert_eq!(a.lines().filter(|l| !l.starts_with('#')).count(), 1 + 4 + 6);

    let z1 = ok(&["experiment", "zarabound", "--n", "32,64", "--seed", "3"]);
    let z2 = bin()
        .args(["experiment", "zarabound", "--n", "32,64", "--seed", "3"])
        .env("GAMMA2LAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(z1.as_bytes(), z2.stdout.as_slice());
    assert!(z1.lines().filter(|l| !l.starts_with('#')).skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn experiment_json_and_file_output() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("g.json");
    ok(&["experiment", "gammagrowth", "--n", "16,32", "--format", "json", "--out", s(&out)]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    let c = ok(&["experiment", "construction", "--m", "20", "--seeds", "1"]);
    assert!(c.contains("cert_le_gamma"));
}

#[test]
fn bad_thread_count_is_usage_error() {
    let out = bin().args(["gen", "pmodp", "--q", "1", "--p", "3"]).env("GAMMA2LAB_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_json_carries_instance() {
    let text = ok(&["gen", "boxes", "--n", "5", "--d", "2", "--seed", "4", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["provenance"]["family"], "boxes");
    assert_eq!(v["instance"]["v1"].as_array().unwrap().len(), 5);
    let m = parse_bmx(v["bmx"].as_str().unwrap()).unwrap();
    assert_eq!(m.count_ones(), v["ones"].as_u64().unwrap() as usize);
    for fam in [
        vec!["corners", "--n", "6"],
        vec!["polh", "--n", "6"],
        vec!["dominance", "--n", "6"],
        vec!["preal", "--q", "2", "--p", "5"],
        vec!["setsystem", "--m", "20"],
    ] {
        let mut args = vec!["gen"];
        args.extend(fam);
        parse_bmx(&ok(&args)).unwrap();
    }
}

#[test]
fn extract_planted_block() {
    let dir = TempDir::new().unwrap();
    let m = BoolMatrix::all_ones(6, 6).unwrap().direct_sum(&BoolMatrix::identity(5).unwrap());
    let p = write(&dir, "planted.bmx", &m);
    let v: Value = serde_json::from_str(&ok(&["extract", s(&p), "--z", "6", "--best-effort"])).unwrap();
    assert_eq!(v["dense_submatrix"]["rows"], serde_json::json!([0, 1, 2, 3, 4, 5]));
    let v: Value = serde_json::from_str(&ok(&["extract", s(&p), "--z", "6"])).unwrap();
    assert!(v["dense_submatrix"].as_str().unwrap().starts_with("skipped: "));
}
