//! End-to-end tests of the binary: exit codes, table formats, config-file
//! precedence, and the calculators.

use std::io::Write;
use std::process::{Command, Output};

fn berryphase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_berryphase"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn phase_json_reports_headline_magnitude() {
    let out = berryphase(&[
        "phase",
        "--scenario",
        "single",
        "--alpha",
        "1e-7",
        "--zeta",
        "91000",
        "--theta",
        "0.7853981633974483",
        "--kappa",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let dphi = doc["delta_phi_abs"].as_f64().unwrap();
    // the point value rides the fast oscillation under the ~1.1e-5 envelope
    assert!((1e-6..2e-5).contains(&dphi), "delta_phi_abs = {dphi}");
    assert_eq!(doc["inputs"]["setup"]["alpha"].as_f64().unwrap(), 1e-7);
}

#[test]
fn zero_alpha_is_a_validation_error() {
    let out = berryphase(&["phase", "--scenario", "free", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn bad_double_mirror_geometry_is_a_validation_error() {
    let out = berryphase(&[
        "phase",
        "--scenario",
        "double",
        "--alpha",
        "1e-5",
        "--zeta",
        "600",
        "--lam",
        "500",
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn mixing_si_and_dimensionless_is_rejected() {
    let out = berryphase(&[
        "phase",
        "--scenario",
        "single",
        "--alpha",
        "1e-7",
        "--z0-m",
        "27.3",
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn sweep_emits_the_fixed_csv_schema_and_round_trips() {
    let out = berryphase(&[
        "sweep",
        "--scenario",
        "single",
        "--axis",
        "zeta",
        "--from",
        "60000",
        "--to",
        "120000",
        "--points",
        "128",
        "--log",
        "--alpha",
        "1e-7",
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "axis,axis_value,delta_phi,delta_phi_abs,A,B,A0,B0,n_used,tail_est,converged"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 128);
    let mut best = (0.0f64, 0.0f64);
    for row in &rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 11);
        assert_eq!(cols[0], "zeta");
        // shortest round-trip rendering: re-parsing is lossless
        let dphi: f64 = cols[2].parse().unwrap();
        let dphi_abs: f64 = cols[3].parse().unwrap();
        assert_eq!(dphi.abs().to_bits(), dphi_abs.to_bits());
        assert_eq!(format!("{dphi}"), cols[2]);
        if dphi_abs > best.1 {
            best = (cols[1].parse().unwrap(), dphi_abs);
        }
        assert_eq!(cols[10], "true");
    }
    // the coarse peak sits in the right region even on a 128-point grid
    assert!(best.0 > 6.5e4 && best.0 < 1.2e5, "peak at {}", best.0);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("peak row"), "stderr: {err}");
}

#[test]
fn converge_emits_rows_and_plateau_note() {
    let out = berryphase(&[
        "converge",
        "--scenario",
        "double",
        "--alpha",
        "1e-3",
        "--zeta",
        "1.5",
        "--lam",
        "10",
        "--max-n-grid",
        "1e4:5e4:1e4",
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "max_n,delta_phi");
    assert_eq!(lines.count(), 5);
    assert!(String::from_utf8_lossy(&out.stderr).contains("plateau"));
}

#[test]
fn evolve_tau_zero_is_the_pure_initial_state() {
    let out = berryphase(&[
        "evolve",
        "--scenario",
        "free",
        "--alpha",
        "1",
        "--theta",
        "1.0471975511965976", // pi/3
        "--tau-max",
        "0",
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "tau,rho11,re_rho12,im_rho12,coherence");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!(lines.next().is_none());
    let rho11: f64 = row[1].parse().unwrap();
    let re12: f64 = row[2].parse().unwrap();
    // cos^2(pi/6) = 3/4, sin(pi/3)/2
    assert!((rho11 - 0.75).abs() < 1e-12);
    assert!((re12 - 0.4330127018922193).abs() < 1e-12);
}

#[test]
fn config_file_fills_gaps_but_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let mut f = std::fs::File::create(&path).unwrap();
    // config sets alpha and theta; the flag overrides theta; kappa stays
    // at its built-in default
    write!(
        f,
        r#"{{"scenario": "single", "alpha": 1e-3, "zeta": 200.0, "theta": 0.5}}"#
    )
    .unwrap();
    drop(f);
    let out = berryphase(&[
        "phase",
        "--config",
        path.to_str().unwrap(),
        "--theta",
        "1.25",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let setup = &doc["inputs"]["setup"];
    assert_eq!(setup["alpha"].as_f64().unwrap(), 1e-3);
    assert_eq!(setup["theta"].as_f64().unwrap(), 1.25);
    assert_eq!(setup["kappa"].as_f64().unwrap(), 1.0);
    assert_eq!(setup["geometry"]["zeta"].as_f64().unwrap(), 200.0);
}

#[test]
fn theta_deg_converts_to_radians() {
    let out = berryphase(&[
        "phase",
        "--scenario",
        "free",
        "--alpha",
        "1",
        "--theta-deg",
        "45",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let theta = doc["inputs"]["setup"]["theta"].as_f64().unwrap();
    assert!((theta - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"scenario": "free", "alpha": 1.0, "zeeta": 3.0}"#).unwrap();
    let out = berryphase(&["phase", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn units_calculators_match_known_values() {
    let out = berryphase(&["units", "unruh-temp", "--accel-si", "2.466e20", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!((doc["unruh_temperature"].as_f64().unwrap() - 1.0).abs() < 1e-3);

    let out = berryphase(&[
        "units",
        "gradient-accel",
        "--delta-t-k",
        "1",
        "--delta-x-m",
        "1e-5",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let a = doc["acceleration"].as_f64().unwrap();
    assert!((a / 8.25e8 - 1.0).abs() < 1e-3, "a = {a}");

    // paper-rounded constants turn the headline SI numbers into alpha = zeta = 1
    let out = berryphase(&[
        "units",
        "reduce",
        "--scenario",
        "single",
        "--omega0-hz",
        "1e9",
        "--accel-si",
        "3e17",
        "--z0-m",
        "0.3",
        "--constants",
        "paper",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["alpha"].as_f64().unwrap(), 1.0);
    assert_eq!(doc["geometry"]["zeta"].as_f64().unwrap(), 1.0);
}

#[test]
fn oracle_subcommand_reports_pass() {
    // trimmed grid to keep the run quick
    let out = berryphase(&["oracle", "--alphas", "1", "--g-values", "0,1"]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout_str(&out);
    assert!(text.contains("pass"));
    assert!(!text.contains("FAIL"));
}
