use std::process::{Command, Output};

fn dzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dzeta")).args(args).env_remove("DZETA_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_prints_value_and_route() {
    let o = dzeta(&["eval", "--s0", "2,0", "--s", "2,0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("0.811742425"), "{out}");
    assert!(out.trim_end().ends_with("+ 0i (route=Direct)"), "{out}");
    let summary = stderr(&o);
    assert!(summary.contains("route=Direct") && summary.contains("est_error=") && summary.contains("wall="));
}

#[test]
fn singular_point_exits_two_with_reason() {
    let o = dzeta(&["eval", "--s0", "1.3,0", "--s", "0.7,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("reason=\"singular locus s0+s=2\""), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn usage_and_convergence_exit_codes() {
    assert_eq!(dzeta(&[]).status.code(), Some(1));
    assert_eq!(dzeta(&["eval", "--s0", "2"]).status.code(), Some(1));
    assert_eq!(dzeta(&["eval", "--s0", "2", "--s", "x,1"]).status.code(), Some(1));
    let o = dzeta(&["gamma2", "--s0", "2", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error kind=convergence"));
}

#[test]
fn mean_square_csv_has_twenty_checkpoints() {
    let o = dzeta(&["mean-square", "--s0", "2,0", "--sigma", "1.5", "--T", "200", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<Vec<f64>> =
        out.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(out.lines().next(), Some("t,re,im,abs2,cumulative"));
    assert_eq!(rows.len(), 20);
    assert_eq!(rows[19][0], 200.0);
    // ζ₂^[2](2, 3) = Σ_k H_{k−1}(2)² k^{-3}
    let target = 0.265_756_255_813_092_4;
    let ratio = rows[19][4] / (198.0 * target);
    assert!((ratio - 1.0).abs() < 0.05, "{ratio}");
    assert!(rows.windows(2).all(|w| w[1][4] >= w[0][4]));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for (i, threads) in ["1", "1", "2"].iter().enumerate() {
        for fmt in ["csv", "json"] {
            let path = dir.path().join(format!("run{i}.{fmt}"));
            let o = Command::new(env!("CARGO_BIN_EXE_dzeta"))
                .args(["mean-square", "--s0", "1.2", "--sigma", "0.7", "--T", "30", "--format", fmt, "--output"])
                .arg(&path)
                .env("DZETA_THREADS", threads)
                .output()
                .unwrap();
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
            assert!(o.stdout.is_empty());
            bodies.push((fmt, std::fs::read(&path).unwrap()));
        }
    }
    for fmt in ["csv", "json"] {
        let same: Vec<&Vec<u8>> = bodies.iter().filter(|b| b.0 == fmt).map(|b| &b.1).collect();
        assert!(same.windows(2).all(|w| w[0] == w[1]), "{fmt} differs");
    }
    let json: serde_json::Value = serde_json::from_slice(&bodies[1].1).unwrap();
    assert_eq!(json["schema"], "dzeta/1");
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let printed = dzeta(&["eval", "--s0", "2,1", "--s", "0.8,15", "--format", "json", "--print-config"]);
    assert_eq!(printed.status.code(), Some(0));
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, stdout(&printed)).unwrap();
    let from_file = dzeta(&["--config", path.to_str().unwrap()]);
    let from_flags = dzeta(&["eval", "--s0", "2,1", "--s", "0.8,15", "--format", "json"]);
    assert_eq!(from_file.status.code(), Some(0), "{}", stderr(&from_file));
    assert_eq!(from_file.stdout, from_flags.stdout);
    let both = dzeta(&["--config", path.to_str().unwrap(), "eval", "--s0", "2", "--s", "3"]);
    assert_eq!(both.status.code(), Some(1));
}

#[test]
fn other_commands_run() {
    let o = dzeta(&["mb-verify", "--lambda", "3", "--s", "1.5", "--c", "-0.75"]);
    let first: f64 = stdout(&o).split_whitespace().next().unwrap().parse().unwrap();
    assert!((first - 0.125).abs() < 1e-12, "{}", stdout(&o));
    let o = dzeta(&["zeta2sq", "--s0", "2", "--w", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().count() == 2);
    let o = dzeta(&["sup-scan", "--s0", "2", "--sigma", "2", "--T", "40", "--window", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("growth exponent: n/a") || stdout(&o).lines().count() == 2);
    let o = dzeta(&["approx-check", "--s0", "2", "--sigma", "0.8", "--points", "5", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let slope = json["fitted_slope"].as_f64().unwrap();
    assert!((-1.1..=-0.6).contains(&slope), "{slope}");
}
