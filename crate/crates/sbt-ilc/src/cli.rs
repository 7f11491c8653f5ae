//! The `ilc` command-line front end: `factor`, `analyze`, `sweep` and
//! `simulate` subcommands driven by a flat key/value config file.
//!
//! Exit codes: 0 success, 1 usage/config error, 2 factorization failure,
//! 3 stability not certified, 4 divergence detected.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{analyze, hinf_check, transition_spectral_radius};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::factor::{factor_plant, FactoredPlant, DEFAULT_CIRCLE_TOL};
use crate::laws::{band_coefficients, build_transition};
use crate::report::sig12;
use crate::sim::{mismatch_study, run, NormKind, Scenario};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FACTORIZATION: i32 = 2;
pub const EXIT_NOT_CERTIFIED: i32 = 3;
pub const EXIT_DIVERGED: i32 = 4;

#[derive(Parser)]
#[command(
    name = "ilc",
    about = "Design and certify repetitive-control-based ILC laws",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor the plant into minimum-phase and mirrored non-minimum-phase parts
    Factor(CommonArgs),
    /// Certify the learning transition matrix for one trial length
    Analyze(CommonArgs),
    /// Compare padded/unpadded spectral radii over a list of trial lengths
    Sweep(CommonArgs),
    /// Run the learning iteration against the (possibly mismatched) true plant
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Also dump the full error vectors, one column per iteration
    #[arg(long)]
    vectors: Option<PathBuf>,
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario config file (key = value lines)
    #[arg(long)]
    config: PathBuf,
    /// Write results here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the frequency grid size from the config
    #[arg(long)]
    grid: Option<usize>,
}

impl CommonArgs {
    fn load(&self) -> Result<Config> {
        let mut cfg = Config::from_file(&self.config)?;
        if let Some(g) = self.grid {
            cfg.grid_size = g;
        }
        Ok(cfg)
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn fmt_array(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| sig12(*x)).collect();
    format!("[{}]", items.join(", "))
}

fn is_factorization_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::UnstablePlant { .. }
            | Error::UnpairedComplexRoot { .. }
            | Error::NotCausallyInvertible
            | Error::ZeroNumerator
            | Error::IllPosedDenominator
    )
}

fn factor_from_config(cfg: &Config) -> Result<FactoredPlant> {
    factor_plant(&cfg.design_plant()?, DEFAULT_CIRCLE_TOL)
}

fn effective_alpha(cfg: &Config, fp: &FactoredPlant) -> f64 {
    if cfg.normalize_by_b {
        cfg.alpha / fp.b()
    } else {
        cfg.alpha
    }
}

fn cmd_factor(args: &CommonArgs) -> Result<i32> {
    let cfg = args.load()?;
    let fp = factor_from_config(&cfg)?;
    let text = format!(
        "d = {}\nnu = {}\ngminus = {}\nb = {}\ngplus_num = {}\ngplus_den = {}\n",
        fp.relative_degree(),
        fp.nu(),
        fmt_array(fp.gminus()),
        sig12(fp.b()),
        fmt_array(fp.gplus().num()),
        fmt_array(fp.gplus().den()),
    );
    emit(&args.out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_analyze(args: &CommonArgs) -> Result<i32> {
    let cfg = args.load()?;
    let fp = factor_from_config(&cfg)?;
    let alpha = effective_alpha(&cfg, &fp);
    let band = band_coefficients(&fp, alpha, &cfg.q_u_filter()?, &cfg.q_e_filter()?);
    let report = analyze(&band, cfg.n, cfg.grid_size)?;
    let mut text = format!("band = {}\n", fmt_array(&band));
    text.push_str(&report.to_text());
    match &args.out {
        Some(path) => {
            let csv = format!(
                "{}\n{}\n",
                crate::analysis::StabilityReport::CSV_HEADER,
                report.to_csv_row()
            );
            std::fs::write(path, csv)?;
            print!("{text}");
        }
        None => print!("{text}"),
    }
    Ok(if report.true_stable {
        EXIT_OK
    } else {
        EXIT_NOT_CERTIFIED
    })
}

fn cmd_sweep(args: &CommonArgs) -> Result<i32> {
    let cfg = args.load()?;
    let sweep = cfg
        .sweep
        .clone()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| Error::Usage("sweep requires a nonempty 'sweep' list".into()))?;
    let fp = factor_from_config(&cfg)?;
    let alpha = effective_alpha(&cfg, &fp);
    let q_u = cfg.q_u_filter()?;
    let q_e = cfg.q_e_filter()?;
    let band = band_coefficients(&fp, alpha, &q_u, &q_e);
    let sup = hinf_check(&band, cfg.grid_size).sup;
    let mut csv = String::from("n,rho_A1,rho_A2,hinf_sup\n");
    for &n in &sweep {
        let a2 = build_transition(&fp, alpha, &q_u, &q_e, n, true)?;
        let a1 = build_transition(&fp, alpha, &q_u, &q_e, n, false)?;
        csv.push_str(&format!(
            "{},{},{},{}\n",
            n,
            sig12(transition_spectral_radius(&a1)?),
            sig12(transition_spectral_radius(&a2)?),
            sig12(sup),
        ));
    }
    emit(&args.out, &csv)?;
    Ok(EXIT_OK)
}

fn cmd_simulate(args: &SimulateArgs) -> Result<i32> {
    let cfg = args.common.load()?;
    let design = cfg.design_plant()?;
    let b = if cfg.normalize_by_b {
        factor_plant(&design, DEFAULT_CIRCLE_TOL)?.b()
    } else {
        1.0
    };
    let law = cfg.law(b)?;
    let reference = cfg.reference_vector();
    let truth = cfg.truth_plant()?;

    let mut scenario = Scenario::new(design.clone(), law.clone(), reference.clone(), cfg.iterations);
    scenario.true_plant = truth.clone();
    scenario.norms = vec![NormKind::One, NormKind::Two, NormKind::Inf];
    let trace = run(&scenario)?;
    emit(&args.common.out, &trace.to_csv(&scenario.norms))?;
    if let Some(path) = &args.vectors {
        std::fs::write(path, trace.vectors_to_text())?;
    }

    if let Some(truth) = &truth {
        let study = mismatch_study(&design, truth, &law, &reference, cfg.iterations)?;
        println!("zpetc_peak = {}", sig12(study.zpetc_peak));
        println!(
            "truth_transition_radius = {}",
            sig12(study.truth_transition_radius)
        );
        match study.crossover_iteration {
            Some(k) => println!("crossover_iteration = {k}"),
            None => println!("crossover_iteration = none"),
        }
    }
    println!(
        "iterations = {} converged = {} diverged = {}",
        trace.iterations_run(),
        trace.converged,
        trace.diverged
    );
    Ok(if trace.diverged {
        EXIT_DIVERGED
    } else {
        EXIT_OK
    })
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Factor(a) => cmd_factor(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Simulate(a) => cmd_simulate(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if is_factorization_failure(&e) {
                EXIT_FACTORIZATION
            } else {
                EXIT_USAGE
            }
        }
    }
}

/// Convenience for integration tests: run against a config path.
pub fn run_subcommand(sub: &str, config: &Path, out: Option<&Path>) -> i32 {
    let mut args: Vec<std::ffi::OsString> = vec![
        "ilc".into(),
        sub.into(),
        "--config".into(),
        config.as_os_str().to_os_string(),
    ];
    if let Some(o) = out {
        args.push("--out".into());
        args.push(o.as_os_str().to_os_string());
    }
    run_cli(args)
}
