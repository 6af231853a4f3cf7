//! Monte-Carlo accuracy sweeps: for every (scenario, coordinate, estimator)
//! cell the harness draws `trials` fresh paired samples, runs the configured
//! decision engine, and tallies successes, undecided outcomes and errors.
//!
//! Each trial's seed is derived from the master seed and the cell coordinates
//! (engine, scenario, noise level, means, estimator, trial index), never from
//! execution order, so any parallel schedule produces identical records.

use anm_core::estimator::Estimator;
use anm_core::park;
use anm_core::regression::FeatureMap;
use anm_core::resit::{self, Direction, Mode};
use anm_core::rng;
use rayon::prelude::*;

use crate::scenario::Scenario;
use crate::SweepError;

/// Which decision engine a sweep exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Direction decision by score comparison (assumes one direction exists).
    ResitPrior,
    /// Per-direction accept/reject via the HSIC gamma test.
    ResitNoPrior,
    /// Conditional-variance ordering plus partial-correlation pruning.
    Park,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::ResitPrior => "resit",
            Engine::ResitNoPrior => "resit-noprior",
            Engine::Park => "park",
        }
    }

    pub fn parse(s: &str) -> Option<Engine> {
        match s {
            "resit" => Some(Engine::ResitPrior),
            "resit-noprior" => Some(Engine::ResitNoPrior),
            "park" => Some(Engine::Park),
            _ => None,
        }
    }

    fn seed_tag(self) -> u64 {
        match self {
            Engine::ResitPrior => 1,
            Engine::ResitNoPrior => 2,
            Engine::Park => 3,
        }
    }
}

/// Whether scoring used held-out data; the split fraction is a run-level
/// detail and not part of the reported records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Coupled,
    Decoupled,
}

impl ModeKind {
    pub fn name(self) -> &'static str {
        match self {
            ModeKind::Coupled => "coupled",
            ModeKind::Decoupled => "decoupled",
        }
    }

    pub fn parse(s: &str) -> Option<ModeKind> {
        match s {
            "coupled" => Some(ModeKind::Coupled),
            "decoupled" => Some(ModeKind::Decoupled),
            _ => None,
        }
    }

    fn of(mode: Mode) -> ModeKind {
        match mode {
            Mode::Coupled => ModeKind::Coupled,
            Mode::Decoupled { .. } => ModeKind::Decoupled,
        }
    }
}

/// The sweep cell coordinate: a noise-scale factor, or a pair of means (the
/// mean sweep fixes the noise level at 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coordinate {
    NoiseLevel(f64),
    Means { mu_x: f64, mu_n: f64 },
}

/// Full description of one sweep run.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub engine: Engine,
    pub scenarios: Vec<Scenario>,
    pub i_values: Vec<f64>,
    pub mean_grid: Option<Vec<(f64, f64)>>,
    pub estimators: Vec<Estimator>,
    pub mode: Mode,
    pub trials: u32,
    pub samples_per_trial: usize,
    pub alpha: f64,
    pub master_seed: u64,
}

impl SweepConfig {
    fn validate(&self) -> Result<(), SweepError> {
        let fail = |msg: &str| Err(SweepError::Config(msg.into()));
        if self.scenarios.is_empty() {
            return fail("no scenarios selected");
        }
        if self.trials < 1 {
            return fail("trials must be at least 1");
        }
        if self.samples_per_trial < 10 {
            return fail("samples per trial must be at least 10");
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return fail("alpha must lie strictly between 0 and 1");
        }
        if let Mode::Decoupled { train_fraction } = self.mode {
            if !(train_fraction > 0.0 && train_fraction < 1.0) {
                return fail("train fraction must lie strictly between 0 and 1");
            }
        }
        if self.engine == Engine::ResitPrior && self.estimators.is_empty() {
            return fail("the resit engine needs at least one estimator");
        }
        Ok(())
    }

    fn validate_noise(&self) -> Result<(), SweepError> {
        self.validate()?;
        if self.i_values.is_empty() {
            return Err(SweepError::Config("no noise levels selected".into()));
        }
        if self.i_values.iter().any(|&i| !(i > 0.0) || !i.is_finite()) {
            return Err(SweepError::Config(
                "noise levels must be positive finite numbers".into(),
            ));
        }
        Ok(())
    }

    fn validate_means(&self) -> Result<(), SweepError> {
        self.validate()?;
        match &self.mean_grid {
            None => Err(SweepError::Config("mean sweep requires a mean grid".into())),
            Some(grid) if grid.is_empty() => {
                Err(SweepError::Config("mean grid must not be empty".into()))
            }
            Some(grid) if grid.iter().any(|(x, n)| !x.is_finite() || !n.is_finite()) => {
                Err(SweepError::Config("means must be finite".into()))
            }
            Some(_) => Ok(()),
        }
    }

    /// The estimator axis of the cell grid: the configured list for the
    /// score-comparison engine, a single implicit slot otherwise (the
    /// no-prior engine is hardwired to the HSIC gamma test; the ordering
    /// engine uses no estimator at all).
    fn estimator_axis(&self) -> Vec<Option<Estimator>> {
        match self.engine {
            Engine::ResitPrior => self.estimators.iter().copied().map(Some).collect(),
            Engine::ResitNoPrior => vec![Some(Estimator::Hsic)],
            Engine::Park => vec![None],
        }
    }
}

/// One output row: the tallied outcomes of all trials in one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyRecord {
    pub engine: Engine,
    pub scenario: String,
    pub estimator: Option<Estimator>,
    pub mode: ModeKind,
    pub coordinate: Coordinate,
    pub trials: u32,
    pub successes: u32,
    pub undecided: u32,
    pub errors: u32,
}

impl AccuracyRecord {
    /// Fraction of trials that recovered the true structure; undecided and
    /// errored trials count as failures.
    pub fn accuracy(&self) -> f64 {
        f64::from(self.successes) / f64::from(self.trials)
    }
}

/// One trial's classified outcome.
enum Outcome {
    Success,
    Failure,
    Undecided,
    Error,
}

fn run_trial(
    config: &SweepConfig,
    scenario: Scenario,
    coordinate: Coordinate,
    estimator: Option<Estimator>,
    trial: u32,
) -> Outcome {
    let (i, mu_x, mu_n) = match coordinate {
        Coordinate::NoiseLevel(i) => (i, 0.0, 0.0),
        Coordinate::Means { mu_x, mu_n } => (1.0, mu_x, mu_n),
    };
    let estimator_ordinal = estimator
        .map(|e| Estimator::ALL.iter().position(|&a| a == e).unwrap() as u64)
        .unwrap_or(u64::MAX);
    let seed = rng::derive_seed(
        config.master_seed,
        &[
            config.engine.seed_tag(),
            scenario.ordinal(),
            i.to_bits(),
            mu_x.to_bits(),
            mu_n.to_bits(),
            estimator_ordinal,
            u64::from(trial),
        ],
    );
    let spec = scenario.generating_spec(i, mu_x, mu_n);
    let pair = match spec.generate_pair(config.samples_per_trial, seed) {
        Ok(p) => p,
        Err(_) => return Outcome::Error,
    };
    // Noise-level grids regress in the coordinates that linearize each
    // scenario; mean grids probe the engines without that hint, so shifted
    // cubic data is fit (and mis-fit) with plain linear features.
    let features = match coordinate {
        Coordinate::NoiseLevel(_) => scenario.feature_map(),
        Coordinate::Means { .. } => FeatureMap::Identity,
    };
    match config.engine {
        Engine::ResitPrior => {
            let est = estimator.expect("resit cells carry an estimator");
            match resit::resit_decide_with_features(&pair, est, config.mode, features, seed) {
                Ok((_, Direction::XtoY)) => Outcome::Success,
                Ok((_, Direction::YtoX)) => Outcome::Failure,
                Ok((_, Direction::Undecided)) => Outcome::Undecided,
                Err(_) => Outcome::Error,
            }
        }
        Engine::ResitNoPrior => {
            match resit::resit_no_prior_with_features(
                &pair,
                config.alpha,
                config.mode,
                features,
                seed,
            ) {
                Ok(d) if d.x_to_y_present && !d.y_to_x_present => Outcome::Success,
                Ok(_) => Outcome::Failure,
                Err(_) => Outcome::Error,
            }
        }
        Engine::Park => {
            match park::uncertainty_scoring_with_features(
                &[&pair.x, &pair.y],
                config.alpha,
                features,
            ) {
                Ok(parents) if parents[0].is_empty() && parents[1] == [0] => Outcome::Success,
                Ok(_) => Outcome::Failure,
                Err(_) => Outcome::Error,
            }
        }
    }
}

fn run_cell(
    config: &SweepConfig,
    scenario: Scenario,
    coordinate: Coordinate,
    estimator: Option<Estimator>,
) -> AccuracyRecord {
    let (successes, undecided, errors) = (0..config.trials)
        .into_par_iter()
        .map(|trial| match run_trial(config, scenario, coordinate, estimator, trial) {
            Outcome::Success => (1u32, 0u32, 0u32),
            Outcome::Failure => (0, 0, 0),
            Outcome::Undecided => (0, 1, 0),
            Outcome::Error => (0, 0, 1),
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    AccuracyRecord {
        engine: config.engine,
        scenario: scenario.name.to_owned(),
        estimator,
        mode: ModeKind::of(config.mode),
        coordinate,
        trials: config.trials,
        successes,
        undecided,
        errors,
    }
}

/// Runs the noise-level sweep: one record per (scenario, i, estimator) cell.
pub fn run_noise_sweep(config: &SweepConfig) -> Result<Vec<AccuracyRecord>, SweepError> {
    config.validate_noise()?;
    let mut records = Vec::new();
    for &scenario in &config.scenarios {
        for &i in &config.i_values {
            for estimator in config.estimator_axis() {
                records.push(run_cell(config, scenario, Coordinate::NoiseLevel(i), estimator));
            }
        }
    }
    Ok(records)
}

/// Runs the mean sweep at noise level 1: one record per
/// (scenario, (μ_X, μ_N), estimator) cell.
pub fn run_mean_sweep(config: &SweepConfig) -> Result<Vec<AccuracyRecord>, SweepError> {
    config.validate_means()?;
    let grid = config.mean_grid.as_ref().expect("validated above");
    let mut records = Vec::new();
    for &scenario in &config.scenarios {
        for &(mu_x, mu_n) in grid {
            for estimator in config.estimator_axis() {
                records.push(run_cell(
                    config,
                    scenario,
                    Coordinate::Means { mu_x, mu_n },
                    estimator,
                ));
            }
        }
    }
    Ok(records)
}

/// The noise-level grids the CLI exposes by name.
pub fn noise_preset(name: &str) -> Option<Vec<f64>> {
    match name {
        // {0.01, 0.02, …, 1.00} ∪ {1, 2, …, 100}: 199 distinct levels
        "thesis" => {
            let mut v: Vec<f64> = (1..=100).map(|k| f64::from(k) / 100.0).collect();
            v.extend((2..=100).map(f64::from));
            Some(v)
        }
        "desk" => Some(vec![0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0]),
        _ => None,
    }
}

/// The mean grids the CLI exposes by name.
pub fn mean_preset(name: &str) -> Option<Vec<(f64, f64)>> {
    let axis: Vec<f64> = match name {
        // {−100, −90, …, 100}²: 441 combinations
        "thesis" => (-10..=10).map(|k| f64::from(k) * 10.0).collect(),
        "desk" => vec![-100.0, 0.0, 100.0],
        _ => return None,
    };
    let mut grid = Vec::with_capacity(axis.len() * axis.len());
    for &mu_x in &axis {
        for &mu_n in &axis {
            grid.push((mu_x, mu_n));
        }
    }
    Some(grid)
}
