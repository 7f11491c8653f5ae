//! End-to-end tests of the `ilc` binary: exit codes, report contents and CSV
//! formats for every subcommand.

use std::path::Path;
use std::process::{Command, Output};

const BASE_CONFIG: &str = "\
num = [0, 1, -1.1]
den = [1, 0.2, -0.0125]
law = modified
alpha = 0.45
n = 100
iterations = 60
seed = 7
";

fn ilc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ilc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("scenario.cfg");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn factor_reports_the_example_factorization() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), BASE_CONFIG);
    let out = ilc(&["factor", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("nu = 1"), "{text}");
    assert!(text.contains("gminus = [1, -1.1]"), "{text}");
    assert!(text.contains("b = 4.41"), "{text}");
}

#[test]
fn factor_rejects_unstable_plant() {
    let dir = tempfile::tempdir().unwrap();
    // pole at z = 2
    let cfg = write_config(dir.path(), "num = [0, 1]\nden = [1, -2]\n");
    let out = ilc(&["factor", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unstable"));
}

#[test]
fn analyze_certifies_the_example_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), BASE_CONFIG);
    let csv_path = dir.path().join("report.csv");
    let out = ilc(&[
        "analyze",
        "--config",
        &cfg,
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("symbol_sup = 0.9955"), "{text}");
    assert!(text.contains("true_stable = true"), "{text}");
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,grid_size,spectral_radius,symbol_sup,symbol_argmax,circulant_radius,one_norm,true_stable,approx_stable,monotonic"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("100,"), "{row}");
    // locale-free decimal separators only
    assert!(!csv.contains(';'));
}

#[test]
fn analyze_flags_unstable_gain() {
    let dir = tempfile::tempdir().unwrap();
    // alpha = 2.2 / b pushes the symbol sup to 1.2
    let text = BASE_CONFIG.replace("alpha = 0.45", "alpha = 2.2\nnormalize_by_b = true");
    let cfg = write_config(dir.path(), &text);
    let out = ilc(&["analyze", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("approx_stable = false"));
}

#[test]
fn sweep_emits_the_fig1_csv() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!("{BASE_CONFIG}sweep = [3, 5, 10, 20]\n");
    let cfg = write_config(dir.path(), &text);
    let out = ilc(&["sweep", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "n,rho_A1,rho_A2,hinf_sup");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 4);
        let rho1: f64 = cols[1].parse().unwrap();
        let rho2: f64 = cols[2].parse().unwrap();
        let sup: f64 = cols[3].parse().unwrap();
        assert!(rho2 < sup && rho2 < rho1, "{row}");
        assert!((sup - 0.9955).abs() < 1e-6);
    }
}

#[test]
fn sweep_without_list_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), BASE_CONFIG);
    let out = ilc(&["sweep", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_converging_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), BASE_CONFIG);
    let csv_path = dir.path().join("trace.csv");
    let out = ilc(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "k,norm1,norm2,norminf,peak_error");
    // the 2-norm column is non-increasing
    let norms: Vec<f64> = lines
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert!(norms.len() > 10);
    for w in norms.windows(2) {
        assert!(w[1] <= w[0] + 1e-12);
    }
}

#[test]
fn simulate_dumps_error_vectors_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &BASE_CONFIG.replace("n = 100", "n = 20"));
    let vec_path = dir.path().join("vectors.txt");
    let out = ilc(&[
        "simulate",
        "--config",
        &cfg,
        "--vectors",
        vec_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&vec_path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("t,e_0,e_1"), "{header}");
    let cols = header.split(',').count();
    for row in lines {
        assert_eq!(row.split(',').count(), cols);
    }
}

#[test]
fn simulate_divergent_run_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let text = BASE_CONFIG
        .replace("alpha = 0.45", "alpha = 2.2\nnormalize_by_b = true")
        .replace("iterations = 60", "iterations = 400");
    let cfg = write_config(dir.path(), &text);
    let out = ilc(&["simulate", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("diverged = true"));
}

#[test]
fn simulate_reports_mismatch_summary() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!(
        "{}truth_num = [0, 1, -1.2]\ntruth_den = [1, 0.2, -0.0125]\n",
        BASE_CONFIG.replace("alpha = 0.45", "alpha = 0.3")
    );
    let cfg = write_config(dir.path(), &text);
    let out = ilc(&["simulate", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("zpetc_peak = "), "{text}");
    assert!(text.contains("crossover_iteration = "), "{text}");
}

#[test]
fn malformed_config_is_a_usage_error_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "num = [0, 1]\nden = [1]\nalpha = oops\n");
    let out = ilc(&["factor", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = ilc(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}
