use std::path::PathBuf;
use std::process::{Command, Output};

fn input(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs").join(name)
}

fn tilting(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilting")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn report_json(dir: &tempfile::TempDir, name: &str, args: &[&str]) -> (Output, String) {
    let path = dir.path().join(name);
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.extend(["--json", &p]);
    let out = tilting(&all);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    (out, text)
}

fn summary(json: &str) -> (u64, u64, u64, u64) {
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    let s = &v["summary"];
    let n = |k: &str| s[k].as_u64().unwrap();
    (n("pass"), n("fail"), n("undecided"), n("total"))
}

#[test]
fn apr_tilt_of_a2_passes() {
    let o = tilting(&["check-tilting", input("a2-apr.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn small_module_names_the_failing_axiom() {
    let o = tilting(&["check-tilting", input("a2-not-tilting.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("FAIL      axiom-T3-coresolution/S2"), "{s}");
    assert!(s.contains("fails T3"), "{s}");
}

#[test]
fn empty_input_has_zero_checks() {
    let dir = tempfile::tempdir().unwrap();
    let (o, json) = report_json(&dir, "r.json", &["check-tilting", input("empty.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(summary(&json), (0, 0, 0, 0));
}

#[test]
fn verify_bb_passes_and_negative_control_fails() {
    let o = tilting(&["verify-bb", input("a2-apr.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = tilting(&["verify-bb", input("a2-negative-control.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn probe_selection() {
    let path = input("a2-apr.txt");
    let o = tilting(&["verify-bb", path.to_str().unwrap(), "--probes", "S1,P2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("R:P1"));
    let o = tilting(&["verify-bb", path.to_str().unwrap(), "--probes", "S1,Nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown probe \"Nope\""), "{}", stderr(&o));
}

#[test]
fn verify_derived_windows() {
    let path = input("a2-apr.txt");
    let o = tilting(&["verify-derived", path.to_str().unwrap(), "--window", "-2..2", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = tilting(&["verify-derived", path.to_str().unwrap(), "--window", "0..0", "--samples", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = tilting(&["verify-derived", path.to_str().unwrap(), "--window", "2..0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_complex_names_the_degree() {
    let o = tilting(&["verify-derived", input("bad-complex.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("bad-complex.txt:5:9:") && e.contains("degree 0"), "{e}");
}

#[test]
fn parse_errors_carry_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "field Q\nalgebra quiver 2\n  arrow a 1 2\nend\nmodule X = simple 3\n").unwrap();
    let o = tilting(&["check-tilting", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.txt:5:19: index 3 out of range 1..2"), "{}", stderr(&o));
}

#[test]
fn reports_round_trip_and_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = input("a2-apr.txt");
    let args = ["verify-bb", path.to_str().unwrap(), "--seed", "5"];
    let (_, a) = report_json(&dir, "a.json", &args);
    let (_, b) = report_json(&dir, "b.json", &args);
    assert_eq!(a, b);
    let (p, f, u, t) = summary(&a);
    assert_eq!(p + f + u, t);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len() as u64, t);
    assert_eq!(v["seed"].as_u64(), Some(5));
    assert!(v.get("timings_us").is_none());

    let (o, c) = report_json(&dir, "c.json", &["report", dir.path().join("a.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(c, a);

    let edited = dir.path().join("edited.txt");
    let mut bytes = std::fs::read(&path).unwrap();
    bytes.push(b'\n');
    std::fs::write(&edited, bytes).unwrap();
    let (_, d) = report_json(&dir, "d.json", &["verify-bb", edited.to_str().unwrap(), "--seed", "5"]);
    let digest = |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap()["input_digest"].clone();
    assert_ne!(digest(&a), digest(&d));

    let (_, timed) = report_json(&dir, "t.json", &["check-tilting", path.to_str().unwrap(), "--timings"]);
    assert!(serde_json::from_str::<serde_json::Value>(&timed).unwrap()["timings_us"].is_object());
}

#[test]
fn tampered_report_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let (_, a) = report_json(&dir, "a.json", &["check-tilting", input("a2-apr.txt").to_str().unwrap()]);
    let bad = a.replacen("\"pass\": 7", "\"pass\": 6", 1);
    assert_ne!(bad, a);
    let p = dir.path().join("bad.json");
    std::fs::write(&p, bad).unwrap();
    let o = tilting(&["report", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("summary"), "{}", stderr(&o));
}
