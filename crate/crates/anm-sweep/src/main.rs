//! Command-line front end: configure a sweep from flags, run it, write CSV.
//!
//! Exit codes: 0 on success, 1 for configuration errors (including flag
//! parsing), 2 for I/O errors.

use std::path::PathBuf;

use anm_core::estimator::Estimator;
use anm_core::resit::Mode;
use clap::Parser;

use anm_sweep::scenario::{Scenario, CATALOG};
use anm_sweep::sweep::{
    mean_preset, noise_preset, run_mean_sweep, run_noise_sweep, Engine, ModeKind, SweepConfig,
};
use anm_sweep::{csv, SweepError};

#[derive(Parser, Debug)]
#[command(
    name = "anm-sweep",
    version,
    about = "Accuracy sweeps for bivariate causal-direction discovery on synthetic additive-noise scenarios"
)]
struct Cli {
    /// Decision engine: resit, resit-noprior, or park
    #[arg(long)]
    engine: String,

    /// Scoring mode: coupled (score on the fitting sample) or decoupled
    /// (score on a held-out split)
    #[arg(long, default_value = "coupled")]
    mode: String,

    /// Fraction of each sample used for fitting in decoupled mode
    #[arg(long, default_value_t = 0.8)]
    train_fraction: f64,

    /// Comma-separated estimator ids (e.g. HSIC,SH_KNN_2), or "all"
    #[arg(long, default_value = "all")]
    estimators: String,

    /// Comma-separated scenario names (e.g. GAU,NL_LAP+UNI), or "all"
    #[arg(long, default_value = "all")]
    scenarios: String,

    /// Noise-level grid: "thesis" (199 levels), "desk" (7 levels), or
    /// "explicit:v1,v2,..."
    #[arg(long = "i-set", default_value = "desk")]
    i_set: String,

    /// Sweep the cause/noise means at noise level 1 instead of sweeping the
    /// noise level
    #[arg(long)]
    mean_sweep: bool,

    /// Mean grid for --mean-sweep: "thesis" (21×21), "desk" (3×3), or
    /// "explicit:muX:muN,muX:muN,..."
    #[arg(long, default_value = "desk")]
    mean_set: String,

    /// Monte-Carlo trials per sweep cell
    #[arg(long, default_value_t = 100)]
    trials: u32,

    /// Sample size per trial
    #[arg(long, default_value_t = 1000)]
    samples: usize,

    /// Significance level for independence tests
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,

    /// Master seed; every trial seed derives from it and the cell coordinates
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Output CSV path
    #[arg(long)]
    out: PathBuf,

    /// Worker threads: a count, or "auto" for one per core
    #[arg(long, default_value = "auto")]
    threads: String,
}

fn config_err(msg: String) -> SweepError {
    SweepError::Config(msg)
}

fn parse_estimators(arg: &str) -> Result<Vec<Estimator>, SweepError> {
    if arg == "all" {
        return Ok(Estimator::ALL.to_vec());
    }
    arg.split(',')
        .map(|raw| {
            let name = raw.trim().to_ascii_uppercase();
            Estimator::parse(&name)
                .ok_or_else(|| config_err(format!("unknown estimator '{raw}'")))
        })
        .collect()
}

fn parse_scenarios(arg: &str) -> Result<Vec<Scenario>, SweepError> {
    if arg == "all" {
        return Ok(CATALOG.to_vec());
    }
    arg.split(',')
        .map(|raw| {
            let name = raw.trim().to_ascii_uppercase();
            Scenario::by_name(&name)
                .ok_or_else(|| config_err(format!("unknown scenario '{raw}'")))
        })
        .collect()
}

fn parse_i_set(arg: &str) -> Result<Vec<f64>, SweepError> {
    if let Some(values) = arg.strip_prefix("explicit:") {
        return values
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| config_err(format!("malformed noise level '{v}'")))
            })
            .collect();
    }
    noise_preset(arg)
        .ok_or_else(|| config_err(format!("unknown noise grid '{arg}' (thesis, desk, explicit:...)")))
}

fn parse_mean_set(arg: &str) -> Result<Vec<(f64, f64)>, SweepError> {
    if let Some(values) = arg.strip_prefix("explicit:") {
        return values
            .split(',')
            .map(|pair| {
                let parse = |v: &str| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| config_err(format!("malformed mean pair '{pair}'")))
                };
                match pair.split_once(':') {
                    Some((x, n)) => Ok((parse(x)?, parse(n)?)),
                    None => Err(config_err(format!(
                        "mean pair '{pair}' must look like muX:muN"
                    ))),
                }
            })
            .collect();
    }
    mean_preset(arg)
        .ok_or_else(|| config_err(format!("unknown mean grid '{arg}' (thesis, desk, explicit:...)")))
}

fn parse_threads(arg: &str) -> Result<Option<usize>, SweepError> {
    if arg == "auto" {
        return Ok(None);
    }
    match arg.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(Some(n)),
        _ => Err(config_err(format!("thread count '{arg}' must be a positive number or 'auto'"))),
    }
}

fn build_config(cli: &Cli) -> Result<SweepConfig, SweepError> {
    let engine = Engine::parse(&cli.engine)
        .ok_or_else(|| config_err(format!("unknown engine '{}'", cli.engine)))?;
    let mode = match ModeKind::parse(&cli.mode) {
        Some(ModeKind::Coupled) => Mode::Coupled,
        Some(ModeKind::Decoupled) => Mode::Decoupled { train_fraction: cli.train_fraction },
        None => return Err(config_err(format!("unknown mode '{}'", cli.mode))),
    };
    Ok(SweepConfig {
        engine,
        scenarios: parse_scenarios(&cli.scenarios)?,
        i_values: parse_i_set(&cli.i_set)?,
        mean_grid: if cli.mean_sweep { Some(parse_mean_set(&cli.mean_set)?) } else { None },
        estimators: parse_estimators(&cli.estimators)?,
        mode,
        trials: cli.trials,
        samples_per_trial: cli.samples,
        alpha: cli.alpha,
        master_seed: cli.seed,
    })
}

fn execute(cli: &Cli) -> Result<String, SweepError> {
    let config = build_config(cli)?;
    if let Some(n) = parse_threads(&cli.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| config_err(format!("thread pool setup failed: {e}")))?;
    }
    let records = if cli.mean_sweep {
        run_mean_sweep(&config)?
    } else {
        run_noise_sweep(&config)?
    };
    csv::write_csv(&records, &cli.out)?;
    Ok(format!("wrote {} records to {}", records.len(), cli.out.display()))
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive here too; they are not errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(summary) => {
            println!("{summary}");
            0
        }
        Err(e @ SweepError::Io { .. }) => {
            eprintln!("{e}");
            2
        }
        Err(e) => {
            eprintln!("{e}");
            1
        }
    }
}
