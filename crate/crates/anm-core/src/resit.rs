//! RESIT — regression with subsequent independence test (Peters et al., 2014)
//! — specialized to the bivariate case: fit both candidate directions by
//! least squares, score each direction on (variable, residual), and pick the
//! direction with the smaller score. The no-prior variant instead tests each
//! direction's residual independence against the HSIC gamma null.

use alloc::vec::Vec;

use crate::dist::PairedSample;
use crate::estimator::Estimator;
use crate::indep::hsic_gamma_test;
use crate::regression::{fit, split, FeatureMap};
use crate::rng::{self, STREAM_SPLIT};
use crate::{Error, Result};

/// Whether scoring reuses the fitting sample or a held-out split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    /// Fit and score on the full sample.
    Coupled,
    /// Fit on a random `train_fraction` of the data, score on the rest.
    Decoupled { train_fraction: f64 },
}

/// The two direction scores of one RESIT decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScorePair {
    pub score_x_to_y: f64,
    pub score_y_to_x: f64,
    pub estimator_id: Estimator,
    pub mode: Mode,
}

/// Decided causal direction; `Undecided` only on exactly equal scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    XtoY,
    YtoX,
    Undecided,
}

/// Outcome of the no-prior variant: whether each direction's additive-noise
/// hypothesis was accepted (residual judged independent of the input).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeDecision {
    pub x_to_y_present: bool,
    pub y_to_x_present: bool,
}

/// The four vectors a decision is scored on: evaluation copies of x and y
/// plus the residuals of each direction's regression.
struct EvaluationSets {
    x_eval: Vec<f64>,
    y_eval: Vec<f64>,
    y_res: Vec<f64>,
    x_res: Vec<f64>,
}

/// Runs the regression stage for both directions under the given mode.
///
/// Both directions use the same feature transform on whichever variable acts
/// as the predictor. Decoupled mode derives its shuffle seed from `seed` via
/// the [`STREAM_SPLIT`] substream; coupled mode is seed-free.
fn evaluation_sets(
    pair: &PairedSample,
    mode: Mode,
    features: FeatureMap,
    seed: u64,
) -> Result<EvaluationSets> {
    match mode {
        Mode::Coupled => {
            let forward = fit(&pair.x, &pair.y, features)?;
            let backward = fit(&pair.y, &pair.x, features)?;
            Ok(EvaluationSets {
                y_res: forward.residuals(&pair.x, &pair.y)?,
                x_res: backward.residuals(&pair.y, &pair.x)?,
                x_eval: pair.x.clone(),
                y_eval: pair.y.clone(),
            })
        }
        Mode::Decoupled { train_fraction } => {
            let parts = split(pair, train_fraction, rng::substream(seed, STREAM_SPLIT))?;
            let forward = fit(&parts.train.x, &parts.train.y, features)?;
            let backward = fit(&parts.train.y, &parts.train.x, features)?;
            Ok(EvaluationSets {
                y_res: forward.residuals(&parts.test.x, &parts.test.y)?,
                x_res: backward.residuals(&parts.test.y, &parts.test.x)?,
                x_eval: parts.test.x,
                y_eval: parts.test.y,
            })
        }
    }
}

/// Decides the causal direction of a pair with the given scoring estimator,
/// regressing with identity features (no assumption about the functional
/// form).
///
/// Returns both direction scores and the verdict: the smaller score wins,
/// an exact tie is `Undecided`.
pub fn resit_decide(
    pair: &PairedSample,
    estimator_id: Estimator,
    mode: Mode,
    seed: u64,
) -> Result<(ScorePair, Direction)> {
    resit_decide_with_features(pair, estimator_id, mode, FeatureMap::Identity, seed)
}

/// [`resit_decide`] with an explicit predictor feature transform, for data
/// whose functional form is known up to the transform (linear regression on
/// transformed coordinates).
pub fn resit_decide_with_features(
    pair: &PairedSample,
    estimator_id: Estimator,
    mode: Mode,
    features: FeatureMap,
    seed: u64,
) -> Result<(ScorePair, Direction)> {
    if pair.len() < 10 {
        return Err(Error::InvalidParameter("direction decisions need at least 10 samples"));
    }
    let sets = evaluation_sets(pair, mode, features, seed)?;
    let score_x_to_y = estimator_id.score(&sets.x_eval, &sets.y_res)?;
    let score_y_to_x = estimator_id.score(&sets.y_eval, &sets.x_res)?;
    let direction = if score_x_to_y < score_y_to_x {
        Direction::XtoY
    } else if score_x_to_y > score_y_to_x {
        Direction::YtoX
    } else {
        Direction::Undecided
    };
    Ok((ScorePair { score_x_to_y, score_y_to_x, estimator_id, mode }, direction))
}

/// No-prior variant: accept each direction's additive-noise hypothesis iff
/// the HSIC gamma test at level `alpha` calls (variable, residual)
/// independent. Unlike [`resit_decide`], both, one, or neither direction may
/// be accepted. Regression uses identity features.
pub fn resit_no_prior(
    pair: &PairedSample,
    alpha: f64,
    mode: Mode,
    seed: u64,
) -> Result<EdgeDecision> {
    resit_no_prior_with_features(pair, alpha, mode, FeatureMap::Identity, seed)
}

/// [`resit_no_prior`] with an explicit predictor feature transform.
pub fn resit_no_prior_with_features(
    pair: &PairedSample,
    alpha: f64,
    mode: Mode,
    features: FeatureMap,
    seed: u64,
) -> Result<EdgeDecision> {
    if pair.len() < 10 {
        return Err(Error::InvalidParameter("direction decisions need at least 10 samples"));
    }
    let sets = evaluation_sets(pair, mode, features, seed)?;
    Ok(EdgeDecision {
        x_to_y_present: hsic_gamma_test(&sets.x_eval, &sets.y_res, alpha)?.independent,
        y_to_x_present: hsic_gamma_test(&sets.y_eval, &sets.x_res, alpha)?.independent,
    })
}
