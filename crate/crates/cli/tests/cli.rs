use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use k3bm_core::arith::IntegerRing;
use k3bm_core::data::{write_manifest, DataDir};
use k3bm_core::poly::{format_poly, parse_expr, MonomialOrder, PolyRing};

fn shipped() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn k3bm(data: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3bm"))
        .arg("--data")
        .arg(data)
        .args(args)
        .env_remove("K3BM_DATA")
        .output()
        .expect("binary runs")
}

fn poly_file(vars: &[&str], expr: &str) -> String {
    let r = PolyRing::new(IntegerRing, vars, MonomialOrder::GrevLex);
    format_poly(&parse_expr(expr, &r).unwrap(), None)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Copy of the shipped data with some files replaced.
fn user_data(replace: &[(&str, &str)], reseal: bool) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let mut names = Vec::new();
    for e in fs::read_dir(shipped()).unwrap() {
        let e = e.unwrap();
        let name = e.file_name().into_string().unwrap();
        fs::copy(e.path(), dir.path().join(&name)).unwrap();
        if name != "MANIFEST" {
            names.push(name);
        }
    }
    for (name, text) in replace {
        fs::write(dir.path().join(name), text).unwrap();
    }
    if reseal {
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        write_manifest(dir.path(), &names).unwrap();
        DataDir::open(dir.path()).expect("resealed data opens");
    }
    dir
}

#[test]
fn certify_all_obstructs_on_shipped_data() {
    let o = k3bm(&shipped(), &["certify-all"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("verdict: obstructed"), "{out}");
}

#[test]
fn structured_output_is_one_json_record_per_line() {
    let o = k3bm(&shipped(), &["--format", "structured", "fourfold", "check-insoluble", "--modulus", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut n = 0;
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["check-id", "anchor", "verdict", "witness"] {
            assert!(v.get(key).is_some(), "{line}");
        }
        n += 1;
    }
    assert!(n >= 2, "{out}");
}

#[test]
fn corrupted_constant_is_an_input_error() {
    let f = fs::read_to_string(shipped().join("f.poly")).unwrap();
    let bad = f.replacen('1', "2", 1);
    let dir = user_data(&[("f.poly", &bad)], false);
    let o = k3bm(dir.path(), &["k3", "bad-primes"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("INPUT-ERROR"));
}

#[test]
fn no_tritangent_at_seven() {
    let o = k3bm(&shipped(), &["k3", "tritangent", "--prime", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 lines over F_7"), "{}", stdout(&o));
}

#[test]
fn bad_arguments_exit_three() {
    let o = k3bm(&shipped(), &["k3", "tritangent", "--prime", "seven"]);
    assert_eq!(o.status.code(), Some(3));
    let o = k3bm(&shipped(), &["--cap-enumeration", "0", "fourfold", "build"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn tight_caps_exhaust() {
    let o = k3bm(&shipped(), &["--cap-basis", "3", "fourfold", "build"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let o = k3bm(&shipped(), &["--cap-enumeration", "1000", "fourfold", "check-insoluble"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn qp_check_of_a_table_point() {
    let o = k3bm(&shipped(), &["local", "qp-check", "--prime", "13", "--point", "-1,0,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn interp_solve_reports_underdetermined_systems() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.txt");
    // x^2 + y^2 + z^2 on two lines: three unknown coefficients
    fs::write(&p, "1 0 1 1 0 1\n0 1 1 1 0 1\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_k3bm"))
        .args(["interp", "solve", "--degree", "2", "--samples"])
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    fs::write(&p, "1 0 1 1 0 1\n0 1 1 1 0 1\n1 1 1 2 0 1\n1 2 1 5 0 1\n1 -1 1 2 0 1\n2 1 1 5 0 1\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_k3bm"))
        .args(["interp", "solve", "--degree", "2", "--samples"])
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn soluble_cubic_fails_step_one() {
    let vars = ["x0", "x1", "x2", "x3", "x4", "x5"];
    let c = poly_file(&vars, "x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3");
    let dir = user_data(&[("c.poly", &c)], true);
    let o = k3bm(dir.path(), &["fourfold", "check-insoluble"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}");
    let line = out.lines().find(|l| l.contains("insoluble-mod9")).unwrap();
    assert!(line.starts_with("FAIL"), "{line}");
    assert!(line.contains('('), "no witness in {line}");
}

#[test]
fn tritangent_at_every_prime_means_start_over() {
    // f restricted to x = 0 is a square at every prime
    let f = poly_file(
        &["x", "y", "z"],
        "(x^3 + y^3 + z^3 + x*y*z)^2 + x*(x^5 + 2*y^5 + 3*z^5 + y^2*z^3 - x^2*y*z^2)",
    );
    let dir = user_data(&[("f.poly", &f)], true);
    let o = k3bm(dir.path(), &["pipeline"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}");
    let line = out.lines().find(|l| l.contains("step6.picard.tritangent-split")).unwrap();
    assert!(line.starts_with("FAIL") && line.contains("start over"), "{line}");
}
