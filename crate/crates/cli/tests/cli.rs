use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use jts_core::generate::{spectra_of, InstanceGenerator};
use jts_core::{JacobiMatrix, SpectrumMode};

const GOLDEN: &str = r#"{"n":2,"q":[0,0],"b":[1]}"#;

fn jts(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jts"))
        .args(args)
        .env_remove("JTS_TOL_OVERRIDE")
        .output()
        .expect("run jts")
}

fn jts_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jts"))
        .args(args)
        .env(key, value)
        .output()
        .expect("run jts")
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn forward_golden_rank_one() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "j.json", GOLDEN);
    let out = jts(&["forward", s(&m), "--h1", "0", "--h2", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    let r5 = 5f64.sqrt();
    assert_eq!(v["mode"], "rank_one");
    assert!(close(&floats(&v["lambdas"]), &[(-1.0 - r5) / 2.0, (-1.0 + r5) / 2.0], 1e-15));
    assert!(close(&floats(&v["mus"]), &[-1.0, 1.0], 1e-15));
    // 17 significant digits
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("e-1") && text.contains("6.18033988749894"), "{text}");
}

#[test]
fn forward_golden_dirichlet_neumann() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "j.json", GOLDEN);
    let o = dir.path().join("s.json");
    let out = jts(&["forward", s(&m), "--dn", "-o", s(&o)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&fs::read_to_string(&o).unwrap()).unwrap();
    assert_eq!(v["mode"], "dirichlet_neumann");
    assert!(close(&floats(&v["lambdas"]), &[-1.0, 1.0], 1e-15));
    assert!(close(&floats(&v["mus"]), &[0.0], 1e-15));
}

#[test]
fn forward_one_by_one_dirichlet_neumann_has_no_mus() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "j.json", r#"{"n":1,"q":[0.25],"b":[]}"#);
    let out = jts(&["forward", s(&m), "--dn"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(floats(&v["lambdas"]), vec![0.25]);
    assert!(v["mus"].as_array().unwrap().is_empty());
}

#[test]
fn forward_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let garbage = file(&dir, "g.json", "{not json");
    assert_eq!(jts(&["forward", s(&garbage), "--dn"]).status.code(), Some(2));
    let negative = file(&dir, "n.json", r#"{"n":2,"q":[0,0],"b":[-1]}"#);
    let out = jts(&["forward", s(&negative), "--dn"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("b_1 not positive"), "{}", stderr(&out));
    let missing = dir.path().join("missing.json");
    assert_eq!(jts(&["forward", s(&missing), "--dn"]).status.code(), Some(2));
    let m = file(&dir, "j.json", GOLDEN);
    assert_eq!(jts(&["forward", s(&m)]).status.code(), Some(2));
    assert_eq!(jts(&["forward", s(&m), "--h1", "1", "--h2", "1"]).status.code(), Some(2));
}

#[test]
fn inverse_golden_rank_one() {
    let dir = TempDir::new().unwrap();
    let r5 = 5f64.sqrt();
    let sp = file(
        &dir,
        "s.json",
        &format!(
            r#"{{"mode":"rank_one","lambdas":[{:.17e},{:.17e}],"mus":[-1,1]}}"#,
            (-1.0 - r5) / 2.0,
            (-1.0 + r5) / 2.0
        ),
    );
    let out = jts(&["inverse", s(&sp), "--h1", "0"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert!(close(&floats(&v["matrix"]["q"]), &[0.0, 0.0], 1e-12));
    assert!(close(&floats(&v["matrix"]["b"]), &[1.0], 1e-12));
    assert!((v["recovered_param"]["finite"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    for key in ["lambda_residual", "mu_residual", "weight_sum_error", "tol_spec"] {
        assert!(v["diagnostics"][key].is_number(), "{key} missing");
    }
}

#[test]
fn inverse_golden_dirichlet_neumann() {
    let dir = TempDir::new().unwrap();
    let sp = file(&dir, "s.json", r#"{"mode":"dirichlet_neumann","lambdas":[-1,1],"mus":[0]}"#);
    let out = jts(&["inverse", s(&sp), "--dn"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert!(close(&floats(&v["matrix"]["q"]), &[0.0, 0.0], 1e-15));
    assert!(close(&floats(&v["matrix"]["b"]), &[1.0], 1e-15));
    assert!(v["recovered_param"].is_null());
}

#[test]
fn inverse_names_failed_condition() {
    let dir = TempDir::new().unwrap();
    let sp = file(&dir, "s.json", r#"{"mode":"rank_one","lambdas":[0,1],"mus":[2,3]}"#);
    let out = jts(&["inverse", s(&sp), "--h1", "0"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("a) interlacing"), "{}", stderr(&out));
    let dup = file(&dir, "d.json", r#"{"mode":"rank_one","lambdas":[0,1],"mus":[1,2]}"#);
    let out = jts(&["inverse", s(&dup), "--h1", "0"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("a)"), "{}", stderr(&out));
}

#[test]
fn inverse_mode_flag_must_match_file() {
    let dir = TempDir::new().unwrap();
    let sp = file(&dir, "s.json", r#"{"mode":"dirichlet_neumann","lambdas":[-1,1],"mus":[0]}"#);
    assert_eq!(jts(&["inverse", s(&sp), "--h1", "0"]).status.code(), Some(2));
    assert_eq!(jts(&["inverse", s(&sp)]).status.code(), Some(2));
}

#[test]
fn tolerance_override_scales_spectral_check() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "j.json", r#"{"n":3,"q":[0.3,-0.2,0.1],"b":[0.7,1.2]}"#);
    let sp = dir.path().join("s.json");
    assert!(jts(&["forward", s(&m), "--h1", "-0.5", "--h2", "0.5", "-o", s(&sp)]).status.success());
    let args = ["inverse", s(&sp), "--h1", "-0.5"];
    assert_eq!(jts_env(&args, "JTS_TOL_OVERRIDE", "1e-30").status.code(), Some(3));
    assert_eq!(jts_env(&args, "JTS_TOL_OVERRIDE", "10").status.code(), Some(0));
    assert_eq!(jts_env(&args, "JTS_TOL_OVERRIDE", "abc").status.code(), Some(2));
}

#[test]
fn forward_then_inverse_reproduces_matrix() {
    let dir = TempDir::new().unwrap();
    let (q, b) = ([0.4, -0.3, 0.2, 0.1, -0.5], [0.9, 1.1, 0.8, 1.2]);
    let m = file(&dir, "j.json", &serde_json::json!({"n": 5, "q": q, "b": b}).to_string());
    for (flags, inv) in [
        (vec!["--h1", "-1", "--h2", "0.75"], vec!["--h1", "-1"]),
        (vec!["--dn"], vec!["--dn"]),
    ] {
        let sp = dir.path().join("s.json");
        let mut args = vec!["forward", s(&m), "-o", s(&sp)];
        args.extend(&flags);
        assert!(jts(&args).status.success());
        let mut args = vec!["inverse", s(&sp)];
        args.extend(&inv);
        let out = jts(&args);
        assert!(out.status.success(), "{}", stderr(&out));
        let v = json(&out);
        assert!(close(&floats(&v["matrix"]["q"]), &q, 1e-8), "{v}");
        assert!(close(&floats(&v["matrix"]["b"]), &b, 1e-8), "{v}");
    }
}

#[test]
fn check_golden_and_shifted() {
    let dir = TempDir::new().unwrap();
    let r5 = 5f64.sqrt();
    let sp = file(
        &dir,
        "s.json",
        &format!(r#"{{"mode":"rank_one","lambdas":[{},{}],"mus":[-1,1]}}"#, (-1.0 - r5) / 2.0, (-1.0 + r5) / 2.0),
    );
    let out = jts(&["check", s(&sp)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["all_pass"], true);
    assert!((v["b_value"].as_f64().unwrap() - 1.0).abs() < 1e-15);

    let shifted = file(&dir, "x.json", r#"{"mode":"rank_one","lambdas":[-1,1],"mus":[-1.5,0.5]}"#);
    let out = jts(&["check", s(&shifted)]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["a_interlacing"]["pass"], false);
    assert!(stderr(&out).contains("a) interlacing"));
}

#[test]
fn check_long_sequences() {
    let dir = TempDir::new().unwrap();
    let mut g = InstanceGenerator::new(36);
    let q = (0..500).map(|_| g.uniform(-1e-3, 1e-3)).collect();
    let b = (1..500).map(|_| g.uniform(0.999, 1.001)).collect();
    let j = JacobiMatrix::new(q, b).unwrap();
    let spectra = spectra_of(&j, SpectrumMode::RankOne, (-0.5, 0.5)).unwrap();
    let sp = file(&dir, "s.json", &jts_core::json::to_string(&spectra).unwrap());
    let start = std::time::Instant::now();
    let out = jts(&["check", s(&sp)]);
    assert!(start.elapsed().as_secs_f64() < 5.0);
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn roundtrip_one_by_one_is_exact() {
    let dir = TempDir::new().unwrap();
    let csv_path = dir.path().join("rt.csv");
    let out = jts(&["roundtrip", "--n", "1", "--trials", "20", "--seed", "3", "--csv", s(&csv_path)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let mut r = csv::Reader::from_path(&csv_path).unwrap();
    let headers = r.headers().unwrap().clone();
    assert_eq!(&headers[0], "trial");
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let rows: Vec<_> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 20);
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(row[0].parse::<usize>().unwrap(), k);
        assert_eq!(&row[col("status")], "ok");
        assert!(row[col("matrix_residual")].parse::<f64>().unwrap() <= 1e-12);
        assert!(row[col("h2_residual")].parse::<f64>().unwrap() <= 1e-12);
    }
    assert!(String::from_utf8_lossy(&out.stdout).contains("failures: 0"));
}

#[test]
fn roundtrip_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        let out = jts(&["roundtrip", "--n", "4", "--trials", "30", "--seed", "11", "--mode", "dn", "--csv", s(p)]);
        assert!(matches!(out.status.code(), Some(0 | 5)));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn roundtrip_failures_exit_five() {
    let out = jts_env(&["roundtrip", "--n", "3", "--trials", "5"], "JTS_TOL_OVERRIDE", "1e-20");
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stdout).contains("failures: 5"));
    assert_eq!(jts(&["roundtrip", "--n", "0", "--trials", "5"]).status.code(), Some(2));
}

#[test]
fn mtrace_golden_tail() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "j.json", GOLDEN);
    let out = jts(&["mtrace", s(&m), "--h", "0", "--axis", "imag", "--from", "10", "--to", "1e4", "--points", "30", "--spacing", "log"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let mut r = csv::Reader::from_reader(&out.stdout[..]);
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), ["xi", "re_m", "im_m", "pred2", "pred3"]);
    let rows: Vec<Vec<f64>> = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 30);
    assert!(rows.iter().all(|r| r.len() == 5));
    let last = rows.last().unwrap();
    // m(iξ) = iξ/(1 + ξ²) here, so ξ·Im m → 1 = −c1
    assert!((last[0] * last[2] - 1.0).abs() < 1e-7, "{last:?}");
    for r in &rows[10..] {
        assert!((r[2] - r[4]).abs() <= 1e-3 * r[2].abs());
        assert!((r[1] - r[3]).abs() <= 1e-12);
    }
}

#[test]
fn mtrace_one_by_one_is_exact() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "j.json", r#"{"n":1,"q":[0.5],"b":[]}"#);
    let out = jts(&["mtrace", s(&m), "--from", "0.5", "--to", "8", "--points", "16"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let mut r = csv::Reader::from_reader(&out.stdout[..]);
    for rec in r.records() {
        let v: Vec<f64> = rec.unwrap().iter().map(|x| x.parse().unwrap()).collect();
        let xi = v[0];
        let d = 0.25 + xi * xi;
        assert!((v[1] - 0.5 / d).abs() <= 1e-15);
        assert!((v[2] - xi / d).abs() <= 1e-15);
    }
    assert_eq!(jts(&["mtrace", s(&m), "--from", "-1", "--to", "1"]).status.code(), Some(2));
}
