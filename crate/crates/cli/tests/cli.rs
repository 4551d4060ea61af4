use std::process::Command;

use kzb_cli::{exit_code, run_suite, Fault, Orders, Params, Suite};
use kzb_core::{CommPoly, Status};

fn kzb(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kzb"))
        .args(args)
        .env_remove("KZB_DEFAULT_ORDERS")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn bernoulli_lines() {
    let (code, out, _) = kzb(&["verify", "bernoulli", "--max-n", "30", "--format", "json"]);
    assert_eq!(code, 0);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let ident: Vec<_> = lines.iter().filter(|v| v["check"] == "h_identity").collect();
    assert_eq!(ident.len(), 30);
    assert!(ident.iter().all(|v| v["status"] == "pass"));
    for key in ["suite", "check", "params", "status", "elapsed_ms"] {
        assert!(lines[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn flatness_passes() {
    let (code, out, _) = kzb(&["verify", "flatness", "--lie-deg", "6", "--u-order", "6", "--q-order", "8"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("pass"));
}

#[test]
fn faults_fail_with_witness() {
    let mut p = Params::default();
    p.orders = Orders { n: 6, k: 6, m: 8, numeric_n: 3 };
    for (suite, fault) in [
        (Suite::Flatness, Fault::Psi),
        (Suite::Flatness, Fault::Epsilon),
        (Suite::Lie, Fault::B4),
        (Suite::Jacobi, Fault::Heat),
        (Suite::Jacobi, Fault::Wp),
        (Suite::Modforms, Fault::G4),
    ] {
        p.fault = Some(fault);
        let r = run_suite(suite, &p);
        assert_eq!(exit_code(&r), 1, "{fault:?}");
        for f in r.iter().filter(|r| r.status == Status::Fail) {
            assert!(f.witness.as_deref().is_some_and(|w| !w.is_empty()));
        }
    }
    p.fault = None;
    assert_eq!(exit_code(&run_suite(Suite::Flatness, &p)), 0);
}

#[cfg(not(feature = "fault-injection"))]
#[test]
fn release_binary_rejects_corrupt() {
    let (code, _, err) = kzb(&["verify", "flatness", "--corrupt", "psi"]);
    assert_eq!(code, 2);
    assert!(err.contains("--corrupt"));
}

#[cfg(feature = "fault-injection")]
#[test]
fn corrupt_flag_fails_flatness() {
    let (code, out, _) = kzb(&["verify", "flatness", "--lie-deg", "6", "--u-order", "6", "--q-order", "8", "--corrupt", "psi"]);
    assert_eq!(code, 1);
    assert!(out.contains("witness"));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(kzb(&["verify", "nope"]).0, 2);
    assert_eq!(kzb(&["verify", "lie", "--lie-deg", "1"]).0, 2);
    assert_eq!(kzb(&["p2m-table", "--max-weight", "7"]).0, 2);
    assert_eq!(kzb(&["associator", "--degree", "6"]).0, 2);
}

#[test]
fn env_orders() {
    let out = Command::new(env!("CARGO_BIN_EXE_kzb"))
        .args(["verify", "tate", "--format", "json"])
        .env("KZB_DEFAULT_ORDERS", "7,5,9")
        .output()
        .unwrap();
    let s = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(s.lines().next().unwrap()).unwrap();
    assert_eq!(v["params"]["N"], "7");
    assert_eq!(v["params"]["K"], "5");
    let bad = Command::new(env!("CARGO_BIN_EXE_kzb"))
        .args(["verify", "tate"])
        .env("KZB_DEFAULT_ORDERS", "7,5")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn p2m_json_round_trips() {
    let (code, out, _) = kzb(&["p2m-table", "--max-weight", "24", "--format", "json"]);
    assert_eq!(code, 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 11);
    for r in rows {
        let s = r["p"].as_str().unwrap();
        assert_eq!(CommPoly::parse(s, &["u", "v"]).unwrap().to_string(), s);
    }
    let (_, md, _) = kzb(&["p2m-table", "--max-weight", "12"]);
    assert!(md.contains("| 12 | 756/65 u^3 + 16200/91 v^2 |"));
}

#[test]
fn series_dumps() {
    let (_, out, _) = kzb(&["series", "eisenstein", "4", "--order", "3"]);
    assert_eq!(out, "q,numerator,denominator\n0,1,240\n1,1,1\n2,9,1\n");
    let (_, out, _) = kzb(&["series", "delta0", "--order", "3"]);
    assert_eq!(out, "q,numerator,denominator\n1,1,1\n2,-24,1\n");
    let (_, out, _) = kzb(&["series", "jacobiF", "--u", "2", "--v", "2", "--q", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    // the u^1 v^0 slice is -2 G_2 = 1/12 - 2q
    let slice: Vec<(i64, String)> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["exponents"][0] == 1 && c["exponents"][1] == 0)
        .map(|c| (c["exponents"][2].as_i64().unwrap(), format!("{}/{}", c["numerator"].as_str().unwrap(), c["denominator"].as_str().unwrap())))
        .collect();
    assert_eq!(slice, vec![(0, "1/12".to_string()), (1, "-2/1".to_string())]);
}

#[test]
fn associator_command() {
    let (code, out, _) = kzb(&["associator", "--degree", "3", "--steps", "2048", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["coefficients"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for r in rows {
        assert!(r["residual"].as_f64().unwrap().abs() < 1e-6);
    }
    let (code, out, _) = kzb(&["associator", "--degree", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["coefficients"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_deterministic() {
    let p = Params { seed: 7, ..Params::default() };
    let strip = |v: Vec<kzb_core::CheckReport>| -> Vec<_> { v.into_iter().map(|r| (r.check, r.status, r.witness, r.detail)).collect() };
    assert_eq!(strip(run_suite(Suite::Lie, &p)), strip(run_suite(Suite::Lie, &p)));
}
