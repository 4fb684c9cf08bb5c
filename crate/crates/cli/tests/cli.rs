use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropfloor")).args(args).output().expect("spawn tropfloor")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn cubic(dir: &TempDir) -> PathBuf {
    file(dir, "cubic.json", r#"{"vertices":[[0,0],[3,0],[0,3]]}"#)
}

#[test]
fn polygon_check_reports_cubic() {
    let d = TempDir::new().unwrap();
    let o = run(&["polygon-check", s(&cubic(&d))]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "h-transverse: yes; interior: 1; sufficient: yes");
}

#[test]
fn count_cubics() {
    let d = TempDir::new().unwrap();
    let p = cubic(&d);
    assert_eq!(stdout(&run(&["count", s(&p)])).trim(), "12");
    assert_eq!(stdout(&run(&["count", s(&p), "--genus", "1"])).trim(), "1");
}

#[test]
fn connect_then_verify() {
    let d = TempDir::new().unwrap();
    let p = cubic(&d);
    let a = d.path().join("a.json");
    let canon = d.path().join("canon.json");
    let cert = d.path().join("cert.json");
    assert_eq!(code(&run(&["build", s(&p), "-o", s(&a)])), 0);
    assert_eq!(code(&run(&["canonicalize", s(&a), "-o", s(&cert), "--curve-out", s(&canon)])), 0);
    assert_eq!(code(&run(&["verify", s(&cert)])), 0);
    let link = d.path().join("link.json");
    assert_eq!(code(&run(&["connect", s(&a), s(&canon), "-o", s(&link)])), 0);
    let o = run(&["verify", s(&link)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn tampered_certificate_fails_verification() {
    let d = TempDir::new().unwrap();
    let p = cubic(&d);
    let a = d.path().join("a.json");
    let cert = d.path().join("cert.json");
    run(&["build", s(&p), "-o", s(&a)]);
    assert_eq!(code(&run(&["canonicalize", s(&a), "-o", s(&cert)])), 0);
    let mut json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let steps = json["steps"].as_array_mut().unwrap();
    assert!(steps.len() >= 3);
    steps.remove(1);
    let bad = file(&d, "bad.json", &json.to_string());
    assert_eq!(code(&run(&["verify", s(&bad)])), 5);
}

#[test]
fn exit_codes() {
    let d = TempDir::new().unwrap();
    let junk = file(&d, "junk.json", "{not json");
    assert_eq!(code(&run(&["count", s(&junk)])), 2);
    assert_eq!(code(&run(&["verify", s(&junk)])), 2);
    assert_eq!(code(&run(&["count", "/nonexistent/p.json"])), 2);
    let concave = file(&d, "concave.json", r#"{"vertices":[[0,0],[2,0],[1,1],[0,2]]}"#);
    assert_eq!(code(&run(&["count", s(&concave)])), 3);
    let steep = file(&d, "steep.json", r#"{"vertices":[[0,0],[2,0],[1,2]]}"#);
    assert_eq!(code(&run(&["build", s(&steep)])), 4);
    assert_eq!(code(&run(&["count", s(&cubic(&d)), "--genus", "2"])), 3);
}

#[test]
fn render_is_deterministic() {
    let d = TempDir::new().unwrap();
    let p = cubic(&d);
    let c = d.path().join("c.json");
    run(&["build", s(&p), "--genus", "1", "-o", s(&c)]);
    let a = run(&["render", s(&c), "--dual"]);
    let b = run(&["render", s(&c), "--dual"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let svg = stdout(&a);
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("#d62728") && svg.contains("#1f77b4"));
    assert!(svg.contains("<polygon"));
}

#[test]
fn enumerate_writes_report() {
    let d = TempDir::new().unwrap();
    let o = run(&["enumerate", s(&cubic(&d)), "--genus", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["severi_degree"], 1);
    assert_eq!(v["wall_graph"]["connected"], true);
}
