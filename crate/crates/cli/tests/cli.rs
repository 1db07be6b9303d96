use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ncj(args: &[&str]) -> Run {
    let Output {
        status,
        stdout,
        stderr,
    } = Command::new(env!("CARGO_BIN_EXE_ncj"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: status.code().expect("exit code"),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const J4_07: &str = "algebra J4_07
dim 4
e1*e2 = e3
e1*e3 = e4
e2*e1 = e3 + e4
e2*e3 = e4
e3*e1 = e4
e3*e2 = e4
";

const J3_01: &str = "algebra J3_01
dim 3
e1*e1 = e2
e1*e2 = e3
e2*e1 = e3
";

#[test]
fn check_reports_identities_and_derivations() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "a.txt", J4_07);
    let r = ncj(&["check", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("PASS       J4_07/flexible"));
    assert!(r.stdout.contains("PASS       J4_07/jordan"));
    assert!(r.stdout.contains("der=2"));
    assert!(r.stdout.contains("4, 2, 1, 0"));
    assert!(r
        .stdout
        .starts_with(&format!("command: ncj check {}", s(&f))));
}

#[test]
fn check_accepts_the_zero_algebra() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "z.txt", "algebra Z\ndim 2\n");
    let r = ncj(&["check", s(&f), "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    let details = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["name"] == "Z/fingerprint")
        .unwrap()["details"]
        .to_string();
    assert!(details.contains("der=4"), "{details}");
}

#[test]
fn check_flags_a_non_flexible_algebra() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "n.txt", "algebra N\ndim 3\ne1*e1 = e2\ne1*e2 = e3\n");
    let r = ncj(&["check", s(&f)]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("FAIL       N/flexible"));
    assert!(r.stdout.contains("fails on"));
}

#[test]
fn check_requires_param_for_families() {
    let d = TempDir::new().unwrap();
    let f = write(
        &d,
        "f.txt",
        "algebra F\ndim 3\nparam a\ne1*e2 = e3\ne2*e1 = a e3\n",
    );
    let r = ncj(&["check", s(&f)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("--param"), "{}", r.stderr);
    let r = ncj(&["check", s(&f), "--param", "-1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

fn cohomology_dims(text: &str) -> String {
    let d = TempDir::new().unwrap();
    let f = write(&d, "a.txt", text);
    let r = ncj(&["cohomology", s(&f), "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let rec = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["name"].as_str().unwrap().ends_with("/dims"))
        .unwrap()
        .clone();
    rec["details"][0].as_str().unwrap().to_string()
}

#[test]
fn cohomology_dimensions() {
    assert_eq!(
        cohomology_dims("algebra J3s_02\ndim 3\ne1*e2 = e3\ne2*e1 = e3\n"),
        "(6, 1, 5)"
    );
    assert_eq!(cohomology_dims(J3_01), "(3, 2, 1)");
    assert_eq!(cohomology_dims("algebra Z\ndim 2\n"), "(4, 0, 4)");
}

#[test]
fn extend_rebuilds_the_four_dimensional_one_generated_algebra() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "a.txt", J3_01);
    let r = ncj(&["extend", s(&f), "--cocycle", "D13+D22+D31", "--name", "E"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let expected = "algebra E\ndim 4\ne1*e1 = e2\ne1*e2 = e3\ne1*e3 = e4\ne2*e1 = e3\ne2*e2 = e4\ne3*e1 = e4\n";
    assert_eq!(r.stdout, expected);
    // The output is itself a valid algebra file.
    let g = write(&d, "e.txt", &r.stdout);
    let c = ncj(&["check", s(&g)]);
    assert_eq!(c.code, 0, "{}", c.stdout);
    assert!(c.stdout.contains("4, 3, 2, 1, 0"));
}

#[test]
fn extend_by_zero_is_split() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "a.txt", J3_01);
    let r = ncj(&["extend", s(&f), "--cocycle", "0"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("algebra J3_01_ext\ndim 4\n"));
    assert!(!r.stdout.contains("e4"), "{}", r.stdout);
}

#[test]
fn extend_rejects_non_cocycles() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "a.txt", J3_01);
    let r = ncj(&["extend", s(&f), "--cocycle", "D12"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not a cocycle"), "{}", r.stderr);
    assert!(r.stdout.is_empty());
}

const CORRECTED: &str = "degeneration from=J4_07 to=J4_02
E1 = -1/2 e1 + 1/2 e2 - 1/4 e3
E2 = -1/2 e3 - 1/4 e4
E3 = t e2
E4 = -1/2 t e4
";

#[test]
fn degeneration_outcomes() {
    let d = TempDir::new().unwrap();
    let ok = write(&d, "ok.txt", CORRECTED);
    let r = ncj(&["degeneration", s(&ok)]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("status: Pass"));

    let bad = write(&d, "bad.txt", &CORRECTED.replace("- 1/4 e3", "- 1/3 e3"));
    let r = ncj(&["degeneration", s(&bad)]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("status: TargetMismatch"), "{}", r.stdout);

    let pole = write(&d, "pole.txt", &CORRECTED.replace("- 1/4 e4", "- 1/2 e4"));
    let r = ncj(&["degeneration", s(&pole)]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("status: PoleAtZero"), "{}", r.stdout);

    let declared = write(
        &d,
        "declared.txt",
        &CORRECTED
            .replace("to=J4_02", "to=J4_02 expect=pole")
            .replace("- 1/4 e4", "- 1/2 e4"),
    );
    let r = ncj(&["degeneration", s(&declared)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn degeneration_resolves_extra_algebra_files() {
    let d = TempDir::new().unwrap();
    let algs = write(
        &d,
        "algs.txt",
        "algebra P\ndim 2\ne1*e1 = e2\n\nalgebra Z2\ndim 2\n",
    );
    let w = write(
        &d,
        "w.txt",
        "degeneration from=P to=Z2\nE1 = t e1\nE2 = t e2\n",
    );
    let r = ncj(&["degeneration", s(&w), "--algebras", s(&algs)]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    let r = ncj(&["degeneration", s(&w)]);
    assert_eq!(r.code, 2);
}

#[test]
fn verify_paper_json_is_deterministic() {
    let args = [
        "verify-paper",
        "--only",
        "degenerations",
        "--only",
        "separation",
        "--seed",
        "0x2a",
        "--format",
        "json",
    ];
    let a = ncj(&args);
    let b = ncj(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["records"].as_array().unwrap().len() >= 10);
}

#[test]
fn verify_paper_rejects_unknown_checks() {
    let r = ncj(&["verify-paper", "--only", "nonsense"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("degenerations"));
}
