//! Benchmark harness for the bivariate causal-direction engines in
//! `anm-core`.
//!
//! The harness runs Monte-Carlo accuracy sweeps over a fixed catalog of 18
//! synthetic scenarios (every cause/noise pairing of the Normal, Uniform and
//! Laplace families, linear and cubic):
//!
//! * [`sweep::run_noise_sweep`] varies the noise-scale factor *i*,
//! * [`sweep::run_mean_sweep`] varies the cause and noise means on a grid at
//!   *i* = 1,
//!
//! and [`csv::write_csv`] serializes the per-cell accuracy records. Every
//! trial's seed is derived from the master seed and the cell coordinates, so
//! results are byte-identical across runs and thread counts.

pub mod csv;
pub mod scenario;
pub mod sweep;

use std::fmt;
use std::path::PathBuf;

/// Harness-level error: an invalid configuration, a malformed CSV, or a
/// failed file operation.
#[derive(Debug)]
pub enum SweepError {
    Config(String),
    Parse(String),
    Io { path: PathBuf, source: std::io::Error },
}

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepError::Config(msg) => write!(f, "configuration error: {msg}"),
            SweepError::Parse(msg) => write!(f, "CSV parse error: {msg}"),
            SweepError::Io { path, source } => {
                write!(f, "I/O error on {}: {source}", path.display())
            }
        }
    }
}

impl std::error::Error for SweepError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            SweepError::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}
