use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mesoq_cli::output::Table;
use mesoq_cli::run::{output_dir, policy_for};
use mesoq_cli::{CliError, RunConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mesoq"))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("cfg.json");
    std::fs::write(&p, text).unwrap();
    p
}

fn run_with(cfg: &Path, out: &Path, extra: &[&str]) -> Output {
    bin().arg("run").arg("--config").arg(cfg).arg("--out").arg(out).args(extra).env_remove("MESOQ_OUT").output().unwrap()
}

#[test]
fn lists_every_figure() {
    let out = bin().arg("list-experiments").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for f in [1, 4, 5, 6, 7, 9, 10, 11, 14, 15, 16, 17, 18] {
        assert!(text.lines().any(|l| l.split_whitespace().next() == Some(&format!("fig{f}"))), "fig{f}");
    }
}

#[test]
fn fig4_writes_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_with(&configs().join("fig4.json"), dir.path(), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("fig4.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "omega_t,absW_num,absW_coh,absW_sq,absW_th,argW_num,argW_coh,argW_sq,argW_th");
    assert_eq!(csv.lines().count(), 402);
    assert!(!csv.contains('\r'));
    // vacuum: |W| = e^{-q²/2} = e^{-1/4}
    let first: Vec<f64> = csv.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((first[1] - (-0.25_f64).exp()).abs() < 1e-15);
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["experiment"], "fig4");
    assert_eq!(m["library_version"], env!("CARGO_PKG_VERSION"));
    assert!(!m["convergence"]["dims"].as_array().unwrap().is_empty());
    assert!(m["convergence"]["oracle_max_error"].as_f64().unwrap() < 1e-10);
}

#[test]
fn fig9_manifest_echoes_extremes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_with(&configs().join("fig9.json"), dir.path(), &[]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("fig9.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "x_A,x_B,R_sep");
    assert_eq!(csv.lines().count(), 201 * 201 + 1);
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    let s = &m["summary"];
    let max = s["grid_max"].as_f64().unwrap();
    assert!((max - s["upper_bound"].as_f64().unwrap()).abs() < 1e-10);
    assert!((max - 1.2471).abs() < 1e-3);
    assert!((s["grid_min"].as_f64().unwrap() - s["true_min"].as_f64().unwrap()).abs() < 1e-10);
}

#[test]
fn unknown_keys_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    for text in [
        r#"{"experiment": "fig4", "params": {"q": 0.5, "omegga": 1}}"#,
        r#"{"experiment": "fig4", "colour": "red"}"#,
        r#"{"experiment": "fig99"}"#,
        r#"{"experiment": "fig4", "params": {"q": -1}}"#,
        r#"{"experiment": "fig5", "params": {"axis": {"start": 1, "stop": 0, "points": 3}}}"#,
        r#"not json"#,
    ] {
        let cfg = write_config(dir.path(), text);
        let out = run_with(&cfg, &dir.path().join("o"), &[]);
        assert_eq!(out.status.code(), Some(2), "{text}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn tiny_dimension_cap_is_nonconvergent() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_with(&configs().join("fig4.json"), dir.path(), &["--dim-cap", "40"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn all_poles_is_singular_only() {
    let dir = tempfile::tempdir().unwrap();
    // odd N₁ - N₂ puts tan poles everywhere once the margin covers every point
    let cfg = write_config(
        dir.path(),
        r#"{"experiment": "fig15", "params": {"n1": 1, "n2": 2, "pole_margin": 10.0, "t_scaled": {"start": 0, "stop": 1, "points": 3}}}"#,
    );
    let out = run_with(&cfg, &dir.path().join("o"), &[]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("o/fig15.csv")).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.split(',').skip(1).all(|v| v == "NaN")));
}

#[test]
fn threads_do_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"experiment": "fig6", "params": {"axis": {"start": 0, "stop": 6.283185307179586, "points": 33}}}"#);
    let a = run_with(&cfg, &dir.path().join("a"), &["--threads", "1"]);
    let b = run_with(&cfg, &dir.path().join("b"), &["--threads", "3"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(std::fs::read(dir.path().join("a/fig6.csv")).unwrap(), std::fs::read(dir.path().join("b/fig6.csv")).unwrap());
}

#[test]
fn output_directory_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &format!(r#"{{"experiment": "fit-q", "output_dir": "{}"}}"#, dir.path().join("cfg_out").display()));
    let env_out = dir.path().join("env_out");
    let out = bin().arg("run").arg("--config").arg(&cfg).env("MESOQ_OUT", &env_out).output().unwrap();
    assert!(out.status.success());
    assert!(env_out.join("fit_q.csv").exists());
    let out = bin().arg("run").arg("--config").arg(&cfg).env_remove("MESOQ_OUT").output().unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("cfg_out/manifest.json").exists());

    let plain = RunConfig::from_json(r#"{"experiment": "fig9"}"#).unwrap();
    assert_eq!(output_dir(&plain, Some(Path::new("x"))), PathBuf::from("x"));
}

#[test]
fn truncation_overrides() {
    let cfg = RunConfig::from_json(r#"{"experiment": "fig4", "truncation": {"initial_dim": 48, "tolerance": 1e-9, "cap": 512}}"#).unwrap();
    let p = policy_for(&cfg, None).unwrap();
    assert_eq!((p.initial_dim, p.tolerance, p.cap), (Some(48), 1e-9, 512));
    assert_eq!(policy_for(&cfg, Some(256)).unwrap().cap, 256);
    let bad = RunConfig::from_json(r#"{"experiment": "fig4", "truncation": {"tolerance": 0}}"#).unwrap();
    assert!(matches!(policy_for(&bad, None), Err(CliError::Config(_))));
}

#[test]
fn verify_reports_json_and_exit_codes() {
    let out = bin().args(["verify", "twomode"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["pass"], true);
    let checks = r["checks"].as_array().unwrap();
    let fact = checks.iter().find(|c| c["name"] == "factorizable/0/ratio_is_one").unwrap();
    assert!(fact["max_error"].as_f64().unwrap() <= 1e-12);

    let out = bin().args(["verify", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["verify", "flux-stats", "--dim-cap", "8"]).output().unwrap();
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn csv_floats_round_trip() {
    let mut t = Table::new("t", 1, &["a", "b"]);
    let v = [0.1 + 0.2, 1e-300, -2.5e17, f64::NAN];
    t.push(vec![v[0], v[1]]);
    t.push(vec![v[2], v[3]]);
    let csv = t.to_csv();
    let parsed: Vec<f64> = csv.lines().skip(1).flat_map(|l| l.split(',').map(|x| x.parse::<f64>().unwrap()).collect::<Vec<_>>()).collect();
    for (a, b) in v.iter().zip(&parsed) {
        assert!(a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()));
    }
}
