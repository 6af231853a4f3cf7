//! CSV serialization of sweep records.
//!
//! Schema (UTF-8, comma-separated, `.` decimal):
//! `engine,scenario,estimator,mode,i,mu_x,mu_n,trials,successes,undecided,errors,accuracy`
//!
//! The estimator field is empty for ordering-engine rows; `i` is empty for
//! mean-sweep rows and `mu_x`/`mu_n` are empty for noise-sweep rows. Rows are
//! written sorted by (engine, scenario, estimator, i, μ_X, μ_N), so output
//! bytes depend only on the record set, never on production order. None of
//! the field values can contain commas, so no quoting is needed.

use std::fmt::Write as _;
use std::path::Path;

use anm_core::estimator::Estimator;

use crate::sweep::{AccuracyRecord, Coordinate, Engine, ModeKind};
use crate::SweepError;

pub const HEADER: &str = "engine,scenario,estimator,mode,i,mu_x,mu_n,trials,successes,undecided,errors,accuracy";

fn sort_key(r: &AccuracyRecord) -> (&'static str, &str, &'static str, f64, f64, f64) {
    let (i, mu_x, mu_n) = match r.coordinate {
        Coordinate::NoiseLevel(i) => (i, f64::NEG_INFINITY, f64::NEG_INFINITY),
        Coordinate::Means { mu_x, mu_n } => (f64::NEG_INFINITY, mu_x, mu_n),
    };
    (
        r.engine.name(),
        &r.scenario,
        r.estimator.map_or("", Estimator::name),
        i,
        mu_x,
        mu_n,
    )
}

/// Renders records to the full CSV text (header included, trailing newline).
pub fn render_csv(records: &[AccuracyRecord]) -> String {
    let mut sorted: Vec<&AccuracyRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        let (ea, sa, ta, ia, xa, na) = sort_key(a);
        let (eb, sb, tb, ib, xb, nb) = sort_key(b);
        (ea, sa, ta)
            .cmp(&(eb, sb, tb))
            .then(ia.total_cmp(&ib))
            .then(xa.total_cmp(&xb))
            .then(na.total_cmp(&nb))
    });
    let mut out = String::with_capacity(64 * (sorted.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for r in sorted {
        let (i, mu_x, mu_n) = match r.coordinate {
            Coordinate::NoiseLevel(i) => (i.to_string(), String::new(), String::new()),
            Coordinate::Means { mu_x, mu_n } => {
                (String::new(), mu_x.to_string(), mu_n.to_string())
            }
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.engine.name(),
            r.scenario,
            r.estimator.map_or("", Estimator::name),
            r.mode.name(),
            i,
            mu_x,
            mu_n,
            r.trials,
            r.successes,
            r.undecided,
            r.errors,
            r.accuracy(),
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Writes the rendered CSV to `path`.
pub fn write_csv(records: &[AccuracyRecord], path: &Path) -> Result<(), SweepError> {
    std::fs::write(path, render_csv(records))
        .map_err(|source| SweepError::Io { path: path.to_owned(), source })
}

/// Parses CSV text produced by [`render_csv`] back into records (the
/// redundant accuracy column is validated against the counts).
pub fn parse_csv(text: &str) -> Result<Vec<AccuracyRecord>, SweepError> {
    let fail = |line: usize, msg: &str| -> SweepError {
        SweepError::Parse(format!("line {}: {msg}", line + 1))
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, first)) if first == HEADER => {}
        _ => return Err(SweepError::Parse("missing or unexpected header".into())),
    }
    let mut records = Vec::new();
    for (k, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            return Err(fail(k, "expected 12 fields"));
        }
        let engine =
            Engine::parse(fields[0]).ok_or_else(|| fail(k, "unknown engine"))?;
        let estimator = match fields[2] {
            "" => None,
            name => Some(Estimator::parse(name).ok_or_else(|| fail(k, "unknown estimator"))?),
        };
        let mode = ModeKind::parse(fields[3]).ok_or_else(|| fail(k, "unknown mode"))?;
        let number = |idx: usize| -> Result<f64, SweepError> {
            fields[idx].parse().map_err(|_| fail(k, "malformed number"))
        };
        let count = |idx: usize| -> Result<u32, SweepError> {
            fields[idx].parse().map_err(|_| fail(k, "malformed count"))
        };
        let coordinate = match (fields[4], fields[5], fields[6]) {
            (_, "", "") if !fields[4].is_empty() => Coordinate::NoiseLevel(number(4)?),
            ("", _, _) if !fields[5].is_empty() && !fields[6].is_empty() => {
                Coordinate::Means { mu_x: number(5)?, mu_n: number(6)? }
            }
            _ => return Err(fail(k, "exactly one of i or the mean pair must be set")),
        };
        let record = AccuracyRecord {
            engine,
            scenario: fields[1].to_owned(),
            estimator,
            mode,
            coordinate,
            trials: count(7)?,
            successes: count(8)?,
            undecided: count(9)?,
            errors: count(10)?,
        };
        if (number(11)? - record.accuracy()).abs() > 1e-12 {
            return Err(fail(k, "accuracy column disagrees with the counts"));
        }
        records.push(record);
    }
    Ok(records)
}
