use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mehler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mehler"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn f(v: &Value, key: &str) -> f64 {
    v[key]
        .as_f64()
        .unwrap_or_else(|| panic!("{key} missing in {v}"))
}

#[test]
fn forward_uncorrelated() {
    let v = json(&mehler(&["forward", "--omega0", "1", "--lambda", "0"]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(f(&v, "z"), 0.0);
    assert_eq!(f(&v["entropies"], "purity"), 1.0);
}

#[test]
fn forward_output_round_trips_exactly() {
    let v = json(&mehler(&["forward", "--lambda", "1.5"]));
    let omega_cap_s = f(&v, "omega_cap_s");
    assert_eq!(omega_cap_s, 1.5);
    let z = f(&v, "z");
    assert!((z - 0.029_437_3).abs() < 1e-7);
    // Feeding the printed widths back reproduces Z bit for bit.
    let (s, c) = (
        format!("{:.16e}", f(&v, "omega_s")),
        format!("{omega_cap_s:.16e}"),
    );
    let inv = json(&mehler(&["invert", "--omega-s", &s, "--omega-cap-s", &c]));
    assert_eq!(f(&inv, "z"), z);
}

#[test]
fn invalid_input_exits_with_2() {
    for args in [
        &["forward", "--lambda", "-0.6"][..],
        &["invert", "--omega-s", "4", "--omega-cap-s", "1"],
        &["map"],
        &["map", "--from", "1", "--to", "100", "--points", "0"],
        &[
            "fit",
            "--samples",
            "/nonexistent/file",
            "--kind",
            "position",
        ],
        &["forward"],
        &["no-such-command"],
    ] {
        let out = mehler(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let out = mehler(&["invert", "--omega-s", "4", "--omega-cap-s", "1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unphysical width pair"));
}

#[test]
fn grid_failure_exits_with_3() {
    let out = mehler(&[
        "oracle",
        "--model",
        "heisenberg",
        "--lambda",
        "1.5",
        "--nodes",
        "60",
        "--half-width",
        "0.8",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trace"));
}

#[test]
fn invert_quarter_ratio() {
    let v = json(&mehler(&[
        "invert",
        "--omega-s",
        "1",
        "--omega-cap-s",
        "4",
        "--q",
        "2",
    ]));
    assert!((f(&v, "omega_bar") - 2.0).abs() < 1e-15);
    assert!((f(&v, "z") - 1.0 / 3.0).abs() < 1e-15);
    assert!((f(&v["entropies"], "purity") - 0.5).abs() < 1e-15);
    assert!((v["entropies"]["renyi"][0]["value"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-14);
    assert!(v["fits"].is_null());
}

#[test]
fn oracle_reports_geometric_spectrum() {
    let v = json(&mehler(&[
        "oracle",
        "--model",
        "heisenberg",
        "--lambda",
        "1.5",
    ]));
    assert!(f(&v["closed_form"], "max_deviation") <= 1e-9);
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 11);

    let v = json(&mehler(&[
        "oracle",
        "--model",
        "heisenberg",
        "--lambda",
        "0",
        "--n-keep",
        "3",
    ]));
    let mu: Vec<f64> = v["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert!((mu[0] - 1.0).abs() < 1e-12 && mu[1].abs() < 1e-12 && mu[2].abs() < 1e-12);
}

#[test]
fn csv_headers_are_fixed() {
    let header = |args: &[&str]| {
        let out = mehler(args);
        assert!(out.status.success());
        String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .next()
            .unwrap()
            .to_string()
    };
    assert_eq!(
        header(&["forward", "--lambda", "1", "--format", "csv"]),
        "omega0,lambda,omega1,omega2,omega_s,d,omega_cap_s,omega_bar,z,energy,k1,k2,purity,linear_entropy,von_neumann"
    );
    assert_eq!(
        header(&[
            "invert",
            "--omega-s",
            "1",
            "--omega-cap-s",
            "4",
            "--format",
            "csv"
        ]),
        "m,occupation"
    );
    assert_eq!(
        header(&[
            "oracle",
            "--model",
            "heisenberg",
            "--lambda",
            "1",
            "--format",
            "csv"
        ]),
        "m,eigenvalue,closed_form,deviation"
    );
    assert_eq!(
        header(&["map", "--lambda-cap", "2", "--format", "csv"]),
        "lambda_cap,rule,lambda_asymptotic,lambda_exact,lambda_used,e_c,e_h_at_exact,purity_h,purity_c,linear_entropy_c,purity_h_asymptote"
    );
}

#[test]
fn map_single_point_and_sweep() {
    let v = json(&mehler(&["map", "--lambda-cap", "2", "--rule", "exact"]));
    let p = &v["points"][0];
    assert!((f(p, "lambda_exact") - 12.0).abs() < 1e-12);
    assert_eq!(f(p, "lambda_asymptotic"), 4.0);
    assert!(p["purity_c"].is_null());
    assert!(v["fit"].is_null());

    let v = json(&mehler(&[
        "map", "--from", "1e2", "--to", "1e6", "--points", "17",
    ]));
    assert_eq!(v["points"].as_array().unwrap().len(), 17);
    assert!((f(&v["fit"], "exponent") + 0.25).abs() <= 0.01);
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn fit_reports_rows_and_degenerate_data() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    write(&bad, "# comment\n0.5\nx\n0.1\n1,2\n");
    let out = mehler(&[
        "fit",
        "--samples",
        bad.to_str().unwrap(),
        "--kind",
        "position",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(
        err.contains("line 3") && err.contains("line 5") && !err.contains("line 4"),
        "{err}"
    );

    let zeros = dir.path().join("zeros.txt");
    write(&zeros, "0\n0\n0\n");
    assert_eq!(
        mehler(&[
            "fit",
            "--samples",
            zeros.to_str().unwrap(),
            "--kind",
            "momentum"
        ])
        .status
        .code(),
        Some(2)
    );

    let two = dir.path().join("two.txt");
    write(&two, "1\n-1\n");
    let v = json(&mehler(&[
        "fit",
        "--samples",
        two.to_str().unwrap(),
        "--kind",
        "momentum",
    ]));
    assert_eq!(f(&v, "value"), 2.0);
    assert_eq!(v["n"], 2);
}

#[test]
fn sample_files_drive_the_inversion() {
    let dir = tempfile::tempdir().unwrap();
    let pos = dir.path().join("x.txt");
    let mom = dir.path().join("k.txt");
    let (pos_s, mom_s) = (pos.to_str().unwrap(), mom.to_str().unwrap());
    json(&mehler(&[
        "sample", "--kind", "position", "--width", "1", "--n", "200000", "--seed", "5", "--out",
        pos_s,
    ]));
    json(&mehler(&[
        "sample", "--kind", "momentum", "--width", "4", "--n", "200000", "--seed", "6", "--out",
        mom_s,
    ]));
    let first = std::fs::read(&pos).unwrap();

    let v = json(&mehler(&[
        "invert",
        "--pos-samples",
        pos_s,
        "--mom-samples",
        mom_s,
    ]));
    assert!((f(&v, "z") * 3.0 - 1.0).abs() < 0.02);
    assert_eq!(v["fits"].as_array().unwrap().len(), 2);

    // Same seed, same bytes.
    json(&mehler(&[
        "sample", "--kind", "position", "--width", "1", "--n", "200000", "--seed", "5", "--out",
        pos_s,
    ]));
    assert_eq!(std::fs::read(&pos).unwrap(), first);
}

#[test]
fn help_succeeds() {
    let out = mehler(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("oracle"));
}
