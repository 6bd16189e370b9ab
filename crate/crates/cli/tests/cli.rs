use std::path::Path;
use std::process::{Command, Output};

use cavsq_cli::figures::figure;

fn cavsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cavsq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

fn rows(out: &Output) -> Vec<Vec<String>> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn coupling_subcommand() {
    let out = cavsq(&["coupling", "--dkl-min", "-12.566370614359172", "--dkl-max", "12.566370614359172", "--samples", "9"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("dkl,k_r,k_i,ki2_minus_3kr2\n"));
    assert!(!text.contains('\r'));
    let r: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(r.len(), 9);
    assert!(r[6][1].abs() < 1e-12);
    assert!((r[6][2] + 1.0 / std::f64::consts::PI).abs() < 1e-12);

    let single = cavsq(&["coupling", "--dkl-min", "0.5", "--dkl-max", "1", "--samples", "1"]);
    assert_eq!(rows(&single).len(), 1);
    assert_eq!(rows(&single)[0][0].parse::<f64>().unwrap(), 0.5);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(cavsq(&["coupling", "--samples", "x"]).status.code(), Some(2));
    assert_eq!(cavsq(&["coupling", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(cavsq(&["figure", "11"]).status.code(), Some(2));
    assert_eq!(cavsq(&["bogus"]).status.code(), Some(2));
}

#[test]
fn steady_lists_every_fixed_point() {
    let dir = tempfile::tempdir().unwrap();
    let kerr = write_config(
        dir.path(),
        "kerr.cfg",
        "delta = 3\ndkl = 6.283185307179586\nalpha_in_mod = 2.449489742783178\n",
    );
    let out = cavsq(&["steady", &kerr]);
    assert!(out.status.success());
    let r = rows(&out);
    assert_eq!(r.len(), 3);
    let stable: Vec<&str> = r.iter().map(|row| row[7].as_str()).collect();
    assert_eq!(stable, ["1", "0", "1"]);

    let out = cavsq(&["spectrum", &kerr, "--mode", "a"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--root"));
    assert!(cavsq(&["spectrum", &kerr, "--mode", "a", "--root", "0"]).status.success());
    assert_eq!(cavsq(&["spectrum", &kerr, "--mode", "a", "--root", "1"]).status.code(), Some(2));
    assert!(cavsq(&["spectrum", &kerr, "--mode", "a", "--root", "1", "--allow-unstable"]).status.success());
}

#[test]
fn infeasible_photon_number_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "inf.cfg",
        "dkl = 0\nbeta_in_mod = 1\nbeta_in_phase = -3.141592653589793\nn = 1\n",
    );
    let out = cavsq(&["steady", &cfg]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("denominator"));
}

#[test]
fn spectrum_rows() {
    let dir = tempfile::tempdir().unwrap();
    let shg = write_config(dir.path(), "shg.cfg", "dkl = 0\nn = 2.5\n");
    let out = cavsq(&["spectrum", &shg, "--omega-grid", "0,0.5", "--normalization", "hat"]);
    assert!(out.status.success());
    let r = rows(&out);
    let db: f64 = r[0][4].parse().unwrap();
    assert!((db + 5.1).abs() < 0.05, "{db}");

    // Same numbers as the library.
    let cfg = cavsq_cli::config_file::ConfigFile::read(&shg).unwrap().resolve().unwrap();
    let ss = cavsq::fixed_points(&cfg).unwrap()[0];
    let (_, b) = cavsq::spectra::raw_spectra(&cfg, &cfg.coupling(), &ss, 0.5);
    assert_eq!(r[1][1].parse::<f64>().unwrap(), b.s_minus);

    // Harmonic drive cancelling the gain: coherent output.
    let coherent = write_config(dir.path(), "b0.cfg", "dkl = 0\nbeta_in_mod = 1.25\nn = 2.5\n");
    let out = cavsq(&["spectrum", &coherent, "--omega-grid", "0:4:5"]);
    for row in rows(&out) {
        for col in [1, 2] {
            assert!((row[col].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn missing_config_is_reported() {
    let out = cavsq(&["steady", "/nonexistent/cavity.cfg"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/cavity.cfg"));
}

#[test]
fn figures_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for n in ["1", "8"] {
        assert!(cavsq(&["figure", n, "--out", a.path().to_str().unwrap()]).status.success());
    }
    let threads = Command::new(env!("CARGO_BIN_EXE_cavsq"))
        .args(["figure", "8", "--out", b.path().to_str().unwrap()])
        .env("CAVSQ_THREADS", "1")
        .output()
        .unwrap();
    assert!(threads.status.success());
    let read = |d: &Path| std::fs::read(d.join("fig8_path.csv")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
    assert!(a.path().join("fig1_coupling.csv").exists());

    let bad = Command::new(env!("CARGO_BIN_EXE_cavsq"))
        .args(["figure", "1", "--out", b.path().to_str().unwrap()])
        .env("CAVSQ_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn every_figure_passes_its_checks() {
    for n in cavsq_cli::figures::FIGURES {
        let fig = figure(n).unwrap();
        assert!(!fig.series.is_empty());
        assert!(fig.checks.iter().all(|c| c.passed), "{}", fig.summary());
    }
}
