//! End-to-end runs of the `zesting` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use zesting::io::{self, ExportFile};
use zesting::TorsionScalar;

fn zesting(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zesting"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn examples() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let o = zesting(&["examples", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    dir
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn enumerate_headlines() {
    let o = zesting(&["enumerate", "a12", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("3 zestings (1 family × 3 roots)"));
    let o = zesting(&["enumerate", "a12", "--n", "2"]);
    assert_eq!(stdout(&o).lines().next(), Some("4 zestings (2 families × 2 roots)"));
    let o = zesting(&["enumerate", "fk3", "--ell", "9", "--k", "1"]);
    assert!(stdout(&o).starts_with("27 zestings"));
}

#[test]
fn enumerate_json_is_byte_stable() {
    let a = zesting(&["--format", "json", "enumerate", "fk3", "--ell", "9", "--k", "1"]);
    let b = zesting(&["enumerate", "fk3", "--ell", "9", "--k", "1", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["count"], 27);
    assert_eq!(v["families"], 3);
    assert_eq!(v["classes"], 3);
}

#[test]
fn invalid_parameters_exit_nonzero() {
    let o = zesting(&["enumerate", "fk3", "--ell", "3", "--k", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn verify_examples() {
    let dir = examples();
    let d = dir.path();
    for (file, braided, code) in [
        ("a12-n2.json", false, 0),
        ("a12-n3-trivial.json", false, 0),
        ("fk3-9-1.json", false, 0),
        ("z4-zeta-minus1.json", true, 0),
        ("z4-zeta-i.json", false, 1),
        ("z4-zeta-i.json", true, 1),
    ] {
        let path = p(d, file);
        let mut args = vec!["verify", path.as_str()];
        if braided {
            args.push("--braided");
        }
        let o = zesting(&args);
        assert_eq!(o.status.code(), Some(code), "{file}: {}", stdout(&o));
    }
    let o = zesting(&["verify", &p(d, "z4-zeta-i.json"), "--braided"]);
    let text = stdout(&o);
    assert!(text.contains("[FAIL] (assoczesting)"));
    assert!(text.contains("[FAIL] (BZ3)"));
    assert!(text.contains("[PASS] (BZ2)"));
    assert!(text.contains("counterexample at (1, 1, 1, 1): lhs = 1, rhs = -1"));
}

#[test]
fn verify_with_coquasi_rows_and_report_file() {
    let dir = examples();
    let d = dir.path();
    let report = p(d, "report.json");
    let o = zesting(&["verify", &p(d, "z4-zeta-minus1.json"), "--braided", "--coquasi", "--report", &report]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
    for row in ["(assoczesting)", "(BZ2)", "(BZ3)", "pentagon", "hexagon r(h, kl)", "hexagon r(hk, l)"] {
        assert!(names.contains(&row), "{row}");
    }
}

#[test]
fn export_tables_and_round_trip() {
    let dir = examples();
    let d = dir.path();
    let out = p(d, "a12.tables.json");
    let o = zesting(&["export", &p(d, "a12-n2.json"), "-o", &out]);
    assert!(o.status.success());
    let file: ExportFile = io::read_json(Path::new(&out)).unwrap();
    let group = zesting::FiniteGroup::new(file.group.clone()).unwrap();
    let (a1, a2) = (group.generators()[0], group.generators()[1]);
    // Ω(α₂, α₂, α₂) = ω(1,1,1) Φ₀(α₁)(α₂) = q
    assert_eq!(file.omega[a2][a2][a2], TorsionScalar::I);
    assert_eq!(file.m[a2][a2], group.mul(group.mul(a2, a2), a1));

    // the report from the export repeats the datum rows exactly
    let from_datum = zesting(&["--format", "json", "verify", &p(d, "a12-n2.json"), "--coquasi"]);
    let from_export = zesting(&["--format", "json", "verify", &out]);
    assert_eq!(from_export.status.code(), Some(0));
    assert_eq!(from_datum.stdout, from_export.stdout);

    // export ∘ import ∘ export is stable
    let z = io::import_tables(&file).unwrap();
    let again = io::export_tables(&z, file.datum.clone());
    assert_eq!(again, file);
}

#[test]
fn export_trivial_is_group_algebra() {
    let dir = examples();
    let d = dir.path();
    let out = p(d, "t.json");
    assert!(zesting(&["export", &p(d, "a12-n3-trivial.json"), "-o", &out]).status.success());
    let file: ExportFile = io::read_json(Path::new(&out)).unwrap();
    let group = zesting::FiniteGroup::new(file.group.clone()).unwrap();
    for a in 0..group.order() {
        for b in 0..group.order() {
            assert_eq!(file.m[a][b], group.mul(a, b));
        }
    }
    assert!(file.omega.iter().flatten().flatten().all(|w| w.is_one()));
}

#[test]
fn export_refuses_invalid_without_force() {
    let dir = examples();
    let d = dir.path();
    let out = p(d, "bad.tables.json");
    let o = zesting(&["export", &p(d, "z4-zeta-i.json"), "-o", &out]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[FAIL] (assoczesting)"));
    let o = zesting(&["export", &p(d, "z4-zeta-i.json"), "-o", &out, "--force"]);
    assert!(o.status.success());
    let o = zesting(&["verify", &out]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_errors_name_the_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = p(dir.path(), "broken.json");
    std::fs::write(&path, "{\n  \"yd\": {\"group\": {\"type\": \"cyclic\", \"n\": 4},\n").unwrap();
    let o = zesting(&["verify", &path]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("broken.json:3:"), "{err}");
}

#[test]
fn enumerate_custom_and_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let yd = zesting::ydmodule::builtin_fk3(9, 1).unwrap();
    let yd_path = p(dir.path(), "fk3.yd.json");
    io::write_json(Path::new(&yd_path), &io::yd_to_file(&yd)).unwrap();
    let out_dir = p(dir.path(), "data");
    let o = zesting(&["enumerate", "custom", "--yd", &yd_path, "--out-dir", &out_dir]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("27 zestings"));
    let o = zesting(&["enumerate", "custom", "--yd", &yd_path, "--nu", r#"{"s":0,"t":6}"#]);
    assert!(stdout(&o).starts_with("9 zestings (3 families × 3 roots)"), "{}", stdout(&o));
    let file = p(Path::new(&out_dir), "zesting-014.json");
    assert_eq!(zesting(&["verify", &file]).status.code(), Some(0));
}

#[test]
fn cohomology_counts() {
    let o = zesting(&["cohomology", "--n", "4", "--m", "2"]);
    assert!(stdout(&o).starts_with("|H^2(C4, C2)| = 2"));
    let o = zesting(&["--format", "json", "cohomology", "--degree", "3", "--n", "3", "--m", "3", "--unity"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classes"], 3);
}
