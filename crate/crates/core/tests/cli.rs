mod common;

use std::path::Path;
use std::process::{Command, Output};

use deduce::pipeline::load_dataset;

use common::{a15_dataset, A15};

fn deduce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deduce")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_then_restore() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("a15.txt");
    let points = "19/416,1/2,1/3,2/3,1/4,3/4,1/5,2/5,3/5,4/5,1/6,5/6,1/7,2/7,3/7,4/7,5/7,6/7,1/8,3/8,5/8,7/8,83/832";
    let o = deduce(&["generate", "--eval", "closed-form", "--expr", A15, "--points", points, "--workers", "3", "--output", p(&data)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(load_dataset(&data).unwrap().points, a15_dataset().points);

    let report = dir.path().join("report.txt");
    let o = deduce(&["restore", "--input", p(&data), "--window", "0,12,13,13", "--holdout", "9", "--output", p(&report)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("/(26759446470328320*s**13)"), "{text}");
    assert!(text.contains("-117205809409155600*s**12"), "{text}");
    assert!(text.contains("radical content = (1 - s)*(25*s - 1)/(5*s)"), "{text}");

    let o = deduce(&["restore", "--input", p(&data), "--adaptive", "--monomial-denominator", "--holdout", "9"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("window: (0,12,13,13)"));
}

#[test]
fn generate_over_a_range() {
    let o = deduce(&["generate", "--eval", "closed-form", "--expr", "(1+s)*R(1)", "--x", "value", "--range", "0,1", "--count", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("npoints:=3;"));
    assert!(out.contains("x(1):=1/2;") && out.contains("x(3):=2/3;"), "{out}");
}

#[test]
fn generate_from_a_hamiltonian_file() {
    let dir = tempfile::tempdir().unwrap();
    let ham = dir.path().join("h.txt");
    std::fs::write(&ham, "dof: 1\nparameter: t\nfrequencies: t\norder: 4\nhamiltonian:\nq(1)^4/4\n").unwrap();
    let o = deduce(&["generate", "--eval", "normal-form", "--hamiltonian", p(&ham), "--quantity", "c:2", "--points", "1,2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("y(1):=3/8*R(1)**2;"), "{}", stdout(&o));
    let o = deduce(&["generate", "--eval", "normal-form", "--hamiltonian", p(&ham), "--quantity", "c:2,0", "--points", "1"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("a15.txt");
    a15_dataset().write(&data).unwrap();

    // not enough points for the window
    let o = deduce(&["restore", "--input", p(&data), "--window", "0,20,20,20", "--holdout", "9"]);
    assert_eq!(code(&o), 3);
    // a window too small for the data: no function of it fits
    let o = deduce(&["restore", "--input", p(&data), "--window", "0,3,3,3", "--holdout", "9"]);
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
    // configuration and parse errors
    let o = deduce(&["restore", "--input", p(&data), "--window", "0,12,13,13", "--holdout", "23"]);
    assert_eq!(code(&o), 4);
    let o = deduce(&["restore", "--input", p(&data), "--window", "1,2"]);
    assert_eq!(code(&o), 4);
    let o = deduce(&["restore", "--input", p(&data)]);
    assert_eq!(code(&o), 4);
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "npoints:=1;\nx(1):=1/2;\ny(1):=(;\nend;\n").unwrap();
    let o = deduce(&["restore", "--input", p(&bad), "--adaptive"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    let o = deduce(&["restore", "--input", p(&dir.path().join("missing.txt")), "--adaptive"]);
    assert_eq!(code(&o), 4);
    let o = deduce(&["restore", "--bogus"]);
    assert_eq!(code(&o), 4);
    let o = deduce(&["--help"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn check_distortion_report() {
    let o = deduce(&["check-distortion", "--prefix", "sqrt", "--kind", "integer", "--bound", "4"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("distorted: 2 of 4"), "{out}");
    assert!(out.contains("probability: 1/2"), "{out}");
    let o = deduce(&["check-distortion", "--prefix", "cbrt", "--kind", "rational", "--bound", "50", "--sample", "500", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("sampled"));
    let o = deduce(&["check-distortion", "--prefix", "sqrt", "--bound", "1"]);
    assert_eq!(code(&o), 4);
}
