use std::process::{Command, Output};

fn gchkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gchkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Data rows of a CSV table (after the comment and header lines).
fn rows(s: &str) -> Vec<Vec<String>> {
    s.lines().skip(2).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

const EVAL: [&str; 13] = ["eval", "--mu", "-2", "--eps", "0", "--nu", "2", "--Omega", "3", "--omega", "7", "--x", "0.6"];

#[test]
fn eval_single_point_agrees_to_twelve_digits() {
    let o = gchkit(&EVAL);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert_eq!(s.lines().nth(1), Some("x,series_oracle,trf_series,|diff|,tail_estimate"));
    let r = rows(&s);
    assert_eq!(r.len(), 1);
    let oracle: f64 = r[0][1].parse().unwrap();
    let trf: f64 = r[0][2].parse().unwrap();
    assert_eq!(format!("{oracle:.12e}"), format!("{trf:.12e}"));
    // 17 significant digits.
    assert_eq!(r[0][1].split('e').next().unwrap().len(), 18);
}

#[test]
fn eval_json_carries_the_same_numbers() {
    let csv = stdout(&gchkit(&EVAL));
    let mut args = EVAL.to_vec();
    args.extend(["--format", "json", "--seed", "5"]);
    let o = gchkit(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["meta"]["seed"], 5);
    assert_eq!(v["meta"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["meta"]["config"]["Omega"].as_f64(), None);
    assert_eq!(v["meta"]["config"]["omega_cap"], 3.0);
    let want: f64 = rows(&csv)[0][2].parse().unwrap();
    assert_eq!(v["rows"][0]["trf_series"].as_f64().unwrap(), want);
    assert!(v["rows"][0]["|diff|"].is_number());
}

#[test]
fn eval_multiple_points_and_second_kind() {
    let o = gchkit(&[
        "eval", "--mu", "-1.5", "--eps", "0.4", "--nu", "0.7", "--Omega", "0.9", "--omega", "1.2", "--x", "0.2,0.5",
        "--x", "0.9", "--kind", "second", "--n-max", "20",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 3);
    for row in r {
        let (a, b): (f64, f64) = (row[1].parse().unwrap(), row[2].parse().unwrap());
        let tail: f64 = row[4].parse().unwrap();
        assert!((a - b).abs() < 1e-12 * a.abs(), "{row:?}");
        assert!((a - b).abs() <= 2.0 * tail + 1e-14 * a.abs(), "{row:?}");
    }
}

#[test]
fn degenerate_root_exits_two_and_names_it() {
    let o = gchkit(&[
        "eval", "--mu", "-2", "--eps", "0.3", "--nu", "1", "--Omega", "1", "--omega", "0", "--x", "0.5", "--kind",
        "second",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degenerate-root"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn unconverged_rows_exit_three_after_printing() {
    let o = gchkit(&[
        "eval", "--mu", "-2", "--eps", "0.5", "--nu", "2", "--Omega", "1", "--omega", "0", "--x", "2.5", "--inner",
        "4", "--n-max", "1",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("non-convergence"));
    assert_eq!(rows(&stdout(&o)).len(), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gchkit(&["eval", "--mu", "-2"]).status.code(), Some(2));
    assert_eq!(gchkit(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(gchkit(&["spectrum", "oscillator", "--omega", "-1"]).status.code(), Some(2));
    assert_eq!(gchkit(&["--version"]).status.code(), Some(0));
}

#[test]
fn verify_exit_codes_follow_the_checks() {
    let o = gchkit(&["verify", "kernels"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(rows(&stdout(&o)).iter().all(|r| r[4] == "true"));
    // The positive-exponent Q_j points fail.
    assert_eq!(gchkit(&["verify", "qj"]).status.code(), Some(1));
    assert_eq!(gchkit(&["verify", "all"]).status.code(), Some(1));
}

#[test]
fn verify_is_reproducible_per_seed() {
    let a = gchkit(&["verify", "kj", "--seed", "7"]);
    let b = gchkit(&["verify", "kj", "--seed", "7"]);
    let c = gchkit(&["verify", "kj", "--seed", "8"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert!(stdout(&a).lines().next().unwrap().ends_with("seed=7"));
}

#[test]
fn spectrum_qdot_ladder() {
    let o = gchkit(&["spectrum", "qdot", "--omega", "1", "--omega-c", "0", "--sigma", "1", "--m", "0", "--imax", "2", "--bmax", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 9);
    for w in r.windows(2).filter(|w| w[0][0] == w[1][0]) {
        let (e0, e1): (f64, f64) = (w[0][2].parse().unwrap(), w[1][2].parse().unwrap());
        assert_eq!(e1 - e0, 2.0);
    }
}

#[test]
fn spectrum_oscillator_ladder() {
    let o = gchkit(&["spectrum", "oscillator", "--lm", "0", "--imax", "0", "--bmax", "3"]);
    let vals: Vec<f64> = rows(&stdout(&o)).iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(vals, vec![1.0, 3.0, 5.0, 7.0]);
}

#[test]
fn spectrum_empty_range_is_header_only() {
    let o = gchkit(&["spectrum", "confinement", "--bmin", "3", "--bmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn spectrum_samples_are_normalised_and_thread_independent() {
    let args = ["spectrum", "oscillator", "--lm", "1", "--imax", "1", "--bmax", "1", "--samples", "400", "--r-max", "20"];
    let one = Command::new(env!("CARGO_BIN_EXE_gchkit")).args(args).env("GCHKIT_THREADS", "1").output().unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_gchkit")).args(args).env("GCHKIT_THREADS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0), "{}", stderr(&one));
    assert_eq!(one.stdout, four.stdout);
    let r = rows(&stdout(&one));
    assert_eq!(r.len(), 4 * 400);
    // Riemann sum of psi² over the grid for the first state.
    let h = 20.0 / 400.0;
    let mass: f64 = r.iter().take(400).map(|row| row[4].parse::<f64>().unwrap().powi(2) * h).sum();
    assert!((mass - 1.0).abs() < 1e-3, "{mass}");
}

#[test]
fn config_file_is_merged_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# oscillator run\nlm = 2\nbmax = 1\nimax = 0\nformat = json\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let o = gchkit(&["spectrum", "oscillator", "--config", cfg, "--bmax", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["rows"][0]["lambda_m"], 3.0);
    assert_eq!(v["meta"]["config"]["model"]["lm"], 2);

    std::fs::write(dir.path().join("bad.cfg"), "lm 2\n").unwrap();
    let bad = dir.path().join("bad.cfg");
    assert_eq!(gchkit(&["spectrum", "oscillator", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let o = gchkit(&["spectrum", "oscillator", "--imax", "0", "--bmax", "0", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(path).unwrap();
    assert_eq!(body.lines().nth(2), Some("0,0,1.0000000000000000e0"));
}
