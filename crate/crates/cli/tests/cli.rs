use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nse"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `(x, y)` rows of a two-column curve.
fn curve(args: &[&str]) -> Vec<(f64, f64)> {
    let o = nse(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
        .lines()
        .skip(1)
        .map(|l| {
            let (x, y) = l.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

fn json_file(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn list_shows_every_family() {
    let o = nse(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 8);
    for (name, param) in [
        ("gausson", "omega"),
        ("trapped-gausson", "omega1"),
        ("cosh1d", "a"),
        ("coshNd", "N"),
        ("power-law", "lambda"),
        ("tan2", "beta"),
        ("softened-delta", "b0"),
        ("coulomb", "aB"),
    ] {
        assert!(
            rows.iter()
                .any(|r| r.starts_with(&format!("{name} ")) && r.contains(param)),
            "{name}"
        );
    }
}

#[test]
fn oscillator_potential_in_energy_units() {
    let rows = curve(&[
        "curve",
        "--model",
        "gausson",
        "--N",
        "3",
        "--what",
        "potential",
        "--from",
        "0",
        "--to",
        "1",
        "--points",
        "3",
    ]);
    let (x, y) = rows[2];
    assert_eq!(x, 1.0);
    assert!((y - 2.0 / 3.0).abs() < 1e-12, "{y}");
}

#[test]
fn cosh_nd_nonlinearity_endpoint() {
    let rows = curve(&["curve", "--model", "coshNd", "--N", "3", "--what", "nonlinearity"]);
    let (phi, g) = *rows.last().unwrap();
    assert_eq!(phi, 1.0);
    assert!((g + 2.0).abs() < 1e-12, "{g}");
}

#[test]
fn coulomb_profile_at_the_bohr_radius() {
    let rows = curve(&[
        "curve", "--model", "coulomb", "--what", "profile", "--from", "0", "--to", "1", "--points", "2",
    ]);
    assert!((rows[1].1 - (-1.0f64).exp()).abs() < 1e-15);
}

#[test]
fn curve_rejects_bad_ranges() {
    assert_eq!(
        nse(&["curve", "--model", "cosh1d", "--what", "profile", "--from", "2", "--to", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nse(&["curve", "--model", "cosh1d", "--what", "nonlinearity", "--to", "1.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nse(&["curve", "--model", "tan2", "--what", "potential", "--to", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(nse(&["curve", "--what", "profile"]).status.code(), Some(2));
}

#[test]
fn curve_output_is_deterministic_and_full_precision() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = nse(&[
            "curve",
            "--model",
            "power-law",
            "--lambda",
            "0.5",
            "--what",
            "potential",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let second = text.lines().nth(2).unwrap();
    let mantissa = second.split(',').next().unwrap().split('e').next().unwrap();
    assert_eq!(mantissa.replace(['.', '-'], "").len(), 17);
    assert!(dir.path().join("a.csv.meta.json").exists());
}

fn reports(o: &Output) -> Vec<Value> {
    serde_json::from_str::<Vec<Value>>(&stdout(o)).unwrap()
}

#[test]
fn verify_invert_coulomb() {
    let o = nse(&["verify", "invert", "--model", "coulomb"]);
    assert_eq!(o.status.code(), Some(0));
    let r = reports(&o);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0]["pass"], true);
    assert!(r[0]["measured"].as_f64().unwrap() < 1e-6);
}

#[test]
fn verify_softened_delta_identities() {
    let o = nse(&["verify", "limits", "--case", "softened-delta", "--a", "1", "--b0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = reports(&o);
    assert_eq!(r.len(), 2);
    let expected = -(2.0 + std::f64::consts::PI) / 2.0;
    assert!((r[0]["expected"].as_f64().unwrap() - expected).abs() < 1e-15);
    assert!(r.iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_uncertainty_small_lambda() {
    let o = nse(&["verify", "uncertainty", "--lambda", "0.01"]);
    assert_eq!(o.status.code(), Some(0));
    let r = reports(&o);
    let product = r
        .iter()
        .find(|c| c["case"].as_str().unwrap().starts_with("uncertainty-heisenberg lambda"))
        .unwrap();
    // measured is the margin Δx·Δp/ħ − ½
    assert!(product["measured"].as_f64().unwrap() > 0.0);
    assert!(r.iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_reports_failures_with_exit_one() {
    // the λ = 0.1 spreads sit just outside the 2% asymptotic band
    let o = nse(&["verify", "uncertainty", "--lambdas", "0.1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("uncertainty-dx lambda=0.1"));
}

#[test]
fn verify_all_is_thread_count_independent() {
    let one = Command::new(env!("CARGO_BIN_EXE_nse"))
        .args(["verify", "residual", "--model", "cosh1d"])
        .env("NSE_THREADS", "1")
        .output()
        .unwrap();
    let many = nse(&["verify", "residual", "--model", "cosh1d"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_nse"))
        .args(["verify", "invert"])
        .env("NSE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn evolve_travelling_soliton() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = nse(&[
        "evolve",
        "--model",
        "cosh1d",
        "--a",
        "1",
        "--velocity",
        "0.5",
        "--time",
        "10",
        "--dt",
        "1e-3",
        "--grid",
        "4096",
        "--xspan",
        "-40:40",
        "--out-dir",
        out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = json_file(&dir.path().join("summary.json"));
    assert!(summary["l2_err"].as_f64().unwrap() < 1e-4);
    assert!(summary["mass_drift"].as_f64().unwrap() < 1e-12);
    let diag = std::fs::read_to_string(dir.path().join("diagnostics.csv")).unwrap();
    assert_eq!(diag.lines().next().unwrap(), "t,mass,peak_x,l2_err_vs_reference");
    assert_eq!(diag.lines().count(), 12);
    let snaps = std::fs::read_to_string(dir.path().join("snapshots.csv")).unwrap();
    assert_eq!(snaps.lines().next().unwrap(), "frame,t,x,re,im,abs2");
    assert_eq!(snaps.lines().count(), 1 + 11 * 4096);
    assert!(dir.path().join("run_meta.json").exists());
}

#[test]
fn evolve_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = nse(&[
            "evolve",
            "--model",
            "power-law",
            "--lambda",
            "0.5",
            "--time",
            "0.5",
            "--grid",
            "512",
            "--out-dir",
            d.path().to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    for f in ["snapshots.csv", "diagnostics.csv", "summary.json"] {
        assert_eq!(
            std::fs::read(a.path().join(f)).unwrap(),
            std::fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn evolve_walled_box_uses_crank_nicolson() {
    let dir = tempfile::tempdir().unwrap();
    let o = nse(&[
        "evolve",
        "--model",
        "tan2",
        "--time",
        "0.5",
        "--grid",
        "255",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let summary = json_file(&dir.path().join("summary.json"));
    assert_eq!(summary["method"], "crank-nicolson");
    assert!(summary["mass_drift"].as_f64().unwrap() < 1e-6);
    let boosted = nse(&[
        "evolve",
        "--model",
        "tan2",
        "--velocity",
        "1",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(boosted.status.code(), Some(2));
}

#[test]
fn evolve_rejects_families_without_a_line_evolution() {
    let dir = tempfile::tempdir().unwrap();
    let o = nse(&[
        "evolve",
        "--model",
        "coulomb",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = nse(&[
        "evolve",
        "--model",
        "cosh1d",
        "--grid",
        "1000",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn evolve_overflow_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = nse(&[
        "evolve",
        "--model",
        "cosh1d",
        "--dt",
        "1e308",
        "--time",
        "1e308",
        "--grid",
        "256",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("diagnostics.csv"), "{err}");
    assert_eq!(json_file(&dir.path().join("summary.json"))["aborted"], true);
}

#[test]
fn head_on_collision() {
    let dir = tempfile::tempdir().unwrap();
    let o = nse(&[
        "collide",
        "--model",
        "cosh1d",
        "--v1",
        "0.5",
        "--v2",
        "-0.5",
        "--sep",
        "20",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = json_file(&dir.path().join("summary.json"));
    for c in summary["post_correlation"].as_array().unwrap() {
        assert!(c.as_f64().unwrap() > 0.999);
    }
    assert!(summary["mass_drift"].as_f64().unwrap() < 1e-10);
    assert!(dir.path().join("trajectories.csv").exists());
}

#[test]
fn collision_needs_distinct_velocities() {
    let dir = tempfile::tempdir().unwrap();
    let o = nse(&[
        "collide",
        "--model",
        "cosh1d",
        "--v1",
        "0.5",
        "--v2",
        "0.5",
        "--sep",
        "20",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}
