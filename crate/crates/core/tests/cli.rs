use std::fs;
use std::process::{Command, Output};

fn conical(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conical"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn convert_reports_all_parameterizations() {
    let o = conical(&["convert", "--g-eta", "0.125"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("sigma,deficit_angle,g_eta"));
    let row = &csv_rows(&stdout(&o))[0];
    assert_eq!(row[0], 0.5);
    assert!((row[1] - std::f64::consts::PI).abs() < 1e-15);

    let o = conical(&["convert", "--g-eta", "0.3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("< 0.25"));
}

#[test]
fn spectrum_flat_ladder_and_natural_units() {
    let o = conical(&["spectrum", "--sigma", "1", "--kappa", "0", "--e-max", "2.5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n,m,nu,energy\n0,0,0,1\n0,-1,1,2\n0,1,1,2\n");

    let o = conical(&[
        "spectrum",
        "--omega",
        "2",
        "--e-max",
        "2",
        "--natural",
        "--m-max",
        "0",
    ]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][3], 1.5);
}

#[test]
fn spectrum_json_marks_marginal_states() {
    let o = conical(&[
        "spectrum", "--kappa", "0.75", "--e-max", "2", "--m-max", "0", "--format", "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["marginal"], true);
    assert_eq!(v[0]["energy"], 1.0);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = [
        "kernel", "--r1", "0.9", "--r2", "1.4", "--dtheta", "0.7", "--beta", "0.8",
    ];
    assert_eq!(conical(&args).stdout, conical(&args).stdout);
    let args = [
        "spectrum", "--sigma", "0.7", "--kappa", "1.3", "--e-max", "12",
    ];
    assert_eq!(conical(&args).stdout, conical(&args).stdout);
}

#[test]
fn wavefunction_samples() {
    let o = conical(&[
        "wavefunction",
        "-n",
        "0",
        "-m",
        "0",
        "--sigma",
        "1",
        "--kappa",
        "0",
        "--r-max",
        "3",
        "--points",
        "31",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("r,psi_abs,psi_radial"));
    for row in csv_rows(&stdout(&o)) {
        let want = (1.0 / std::f64::consts::PI).sqrt() * (-row[0] * row[0] / 2.0).exp();
        assert!((row[2] - want).abs() < 1e-14);
    }

    // vanishes at the apex, and the samples carry density 1/(2pi)
    let o = conical(&[
        "wavefunction",
        "-n",
        "1",
        "-m",
        "1",
        "--r-max",
        "10",
        "--points",
        "4001",
    ]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0], vec![0.0, 0.0, 0.0]);
    let h = rows[1][0] - rows[0][0];
    let integral: f64 = rows.iter().map(|r| r[1] * r[1] * r[0]).sum::<f64>() * h;
    assert!(
        (integral - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-8,
        "{integral}"
    );

    assert_eq!(
        conical(&["wavefunction", "-n", "x", "-m", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn kernel_ordering_in_angle() {
    let value = |dtheta: &str| {
        let o = conical(&[
            "kernel", "--r1", "1.1", "--r2", "1.1", "--beta", "0.6", "--dtheta", dtheta,
            "--format", "json",
        ]);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["value"].as_f64().unwrap()
    };
    assert!(value("0") >= value("3.141592653589793"));
}

#[test]
fn kernel_spectral_method_and_tolerance() {
    let o = conical(&[
        "kernel", "--r1", "1", "--r2", "1", "--beta", "1", "--n-max", "40", "--m-max", "20",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("value,tail_bound,m_max,n_max"));
    assert!(text.lines().nth(1).unwrap().ends_with(",20,40"));

    let o = conical(&[
        "kernel",
        "--r1",
        "3",
        "--r2",
        "3",
        "--beta",
        "0.2",
        "--m-max",
        "2",
        "--tolerance",
        "1e-10",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("truncation bound"));
    assert!(o.stdout.is_empty());
}

#[test]
fn config_file_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# cone\nsigma = 1\nkappa=0\nformat = json\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let o = conical(&["spectrum", "--config", cfg, "--e-max", "1.5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["nu"], 0.0);

    // flags beat the file
    let o = conical(&[
        "spectrum", "--config", cfg, "--sigma", "0.5", "--kappa", "1", "--e-max", "1.6",
        "--format", "csv",
    ]);
    assert_eq!(stdout(&o), "n,m,nu,energy\n0,0,0.5,1.5\n");

    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "temperature = 3\n").unwrap();
    let o = conical(&["spectrum", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown key"));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("levels.csv");
    let o = conical(&["spectrum", "--e-max", "4", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(fs::read_to_string(&path)
        .unwrap()
        .starts_with("n,m,nu,energy\n0,0,0.5,1.5\n"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        conical(&["spectrum", "--no-such-flag"]).status.code(),
        Some(2)
    );
    assert_eq!(conical(&["frobnicate"]).status.code(), Some(2));
    let o = conical(&["spectrum", "--kappa", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("kappa must be >= 1 - sigma^2 = 0.75"));
    assert_eq!(
        conical(&["verify", "--suite", "everything"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_defaults_pass() {
    let o = conical(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let records: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["suite", "case", "expected", "actual", "tolerance", "pass"] {
        assert!(
            records.iter().all(|r| r.get(key).is_some()),
            "missing {key}"
        );
    }
    for suite in [
        "spectrum-match",
        "recombination",
        "transfer-matrix",
        "semigroup",
        "normalization",
    ] {
        assert!(
            records.iter().any(|r| r["suite"] == suite),
            "no {suite} records"
        );
    }
}

#[test]
fn verify_podolsky_excludes_and_passes() {
    let o = conical(&[
        "verify",
        "--mode",
        "podolsky",
        "--sigma",
        "0.5",
        "--suite",
        "spectrum-match",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let records: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(records.iter().all(|r| r["verdict"] == "excludes"));
}

#[test]
fn verify_flat_modes_identical() {
    let run = |mode: &str| {
        let o = conical(&[
            "verify",
            "--sigma",
            "1",
            "--suite",
            "spectrum-match",
            "--mode",
            mode,
            "--format",
            "csv",
        ]);
        assert!(o.status.success());
        stdout(&o)
            .lines()
            .skip(1)
            .map(|l| l.split_once(' ').unwrap().1.to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(run("jensen-koppe"), run("podolsky"));
}

#[test]
fn verify_failure_exits_1() {
    // at the reality bound the s-wave order is zero and the inner wall cannot be extrapolated
    let o = conical(&["verify", "--kappa", "0.75", "--suite", "spectrum-match"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("FAIL"));
}
