use std::process::{Command, Output};

use chowlab::exactalg::BiPoly;
use serde_json::Value;

fn chowlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chowlab"))
        .args(args)
        .env_remove("CHOWLAB_NMAX")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = chowlab(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn poly_of(v: &Value) -> BiPoly {
    serde_json::from_value(v["poly"].clone()).unwrap()
}

#[test]
fn hilbert_text() {
    let out = chowlab(&["hilbert", "--family", "vector", "--n", "3", "--r", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1 + (2 + q + q^2)*t + t^2");
}

#[test]
fn hilbert_methods_agree_in_json() {
    let base = [
        "hilbert", "--family", "vector", "--n", "4", "--r", "3", "--method",
    ];
    let polys: Vec<BiPoly> = ["chain", "recurrence", "closed"]
        .iter()
        .map(|m| {
            let mut args = base.to_vec();
            args.push(m);
            poly_of(&json(&args))
        })
        .collect();
    assert_eq!(polys[0], polys[1]);
    assert_eq!(polys[0], polys[2]);
}

#[test]
fn oracle_over_f2() {
    let v = json(&[
        "hilbert", "--family", "vector", "--n", "3", "--r", "3", "--method", "oracle", "--p", "2",
    ]);
    assert_eq!(poly_of(&v), BiPoly::from_t_coeffs(&[1, 8, 1]));
}

#[test]
fn cd_vector_5_5() {
    let out = chowlab(&["cd", "--family", "vector", "--n", "5", "--r", "5"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "q^2 + 2*q^3 + 3*q^4 + 4*q^5 + 3*q^6 + 2*q^7 + q^8"
    );
}

#[test]
fn json_round_trip() {
    let v = json(&["qeulerian", "--n", "4"]);
    let p = poly_of(&v);
    let back = serde_json::to_value(&p).unwrap();
    assert_eq!(back, v["poly"]);
    assert_eq!(p.eval_q(&1.into()), BiPoly::from_t_coeffs(&[1, 11, 11, 1]));
}

#[test]
fn csv_header() {
    let out = chowlab(&[
        "--format", "csv", "hilbert", "--family", "uniform", "--n", "3", "--r", "3",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "t,q,coefficient\n0,0,1\n1,0,4\n2,0,1\n");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--format",
        "json",
        "check",
        "--suite",
        "qeuler,cd",
        "--nmax",
        "4",
    ];
    assert_eq!(chowlab(&args).stdout, chowlab(&args).stdout);
}

#[test]
fn full_check_passes() {
    let out = chowlab(&["check", "--suite", "all", "--nmax", "6"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("overall: PASS"));
}

#[test]
fn injected_fault_is_localized() {
    let out = chowlab(&[
        "check",
        "--suite",
        "routes",
        "--nmax",
        "4",
        "--inject-fault",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let s = stdout(&out);
    assert!(s.contains("FAIL"));
    assert!(s.contains("VectorSpace(4, 4)"), "{s}");
}

#[test]
fn domain_and_usage_errors_exit_2() {
    let bad_rank = chowlab(&["hilbert", "--family", "uniform", "--n", "3", "--r", "4"]);
    assert_eq!(bad_rank.status.code(), Some(2));
    let composite = chowlab(&[
        "hilbert", "--family", "vector", "--n", "2", "--r", "2", "--method", "oracle", "--p", "4",
    ]);
    assert_eq!(composite.status.code(), Some(2));
    let stray_p = chowlab(&[
        "hilbert", "--family", "vector", "--n", "2", "--r", "2", "--p", "2",
    ]);
    assert_eq!(stray_p.status.code(), Some(2));
}

#[test]
fn resource_bound_exits_3() {
    let out = chowlab(&["qeulerian", "--n", "11", "--method", "definition"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn env_overrides_bound() {
    let args = ["qeulerian", "--n", "5", "--method", "definition"];
    let ok = chowlab(&args);
    assert!(ok.status.success());
    let limited = Command::new(env!("CARGO_BIN_EXE_chowlab"))
        .args(args)
        .env("CHOWLAB_NMAX", "4")
        .output()
        .unwrap();
    assert_eq!(limited.status.code(), Some(3));
}

#[test]
fn conjecture_report_fields() {
    let v = json(&["conjecture", "--n", "4", "--r", "2"]);
    for key in ["lhs", "rhs", "equal", "lhs_reversed", "bivariate"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let lhs: BiPoly = serde_json::from_value(v["lhs"].clone()).unwrap();
    assert_eq!(lhs, BiPoly::from_t_coeffs(&[1, 3]));
}
