//! Least-squares machinery shared by both direction-discovery engines:
//! single-predictor OLS with an optional cubic feature transform, residual
//! computation, random train/test splitting, and the conditional residual
//! variance used by the ordering engine.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // resolves float math in no_std builds
use num_traits::Float;
use rand::seq::SliceRandom;

use crate::dist::PairedSample;
use crate::rng;
use crate::{Error, Result};

/// Feature transform applied to the predictor before fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureMap {
    Identity,
    Cubic,
}

impl FeatureMap {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            FeatureMap::Identity => x,
            FeatureMap::Cubic => x * x * x,
        }
    }
}

/// An ordinary-least-squares fit `y ≈ c₀ + c₁·φ(x)`.
///
/// `coefficients[0]` is the intercept; one slope per mapped predictor.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedModel {
    pub coefficients: Vec<f64>,
    pub feature_map: FeatureMap,
}

impl FittedModel {
    /// Predicted response at a single point.
    pub fn predict(&self, x: f64) -> f64 {
        self.coefficients[0] + self.coefficients[1] * self.feature_map.apply(x)
    }

    /// Residuals `predict(x_k) − y_k` (prediction minus observation).
    pub fn residuals(&self, x_eval: &[f64], y_eval: &[f64]) -> Result<Vec<f64>> {
        if x_eval.len() != y_eval.len() {
            return Err(Error::LengthMismatch { left: x_eval.len(), right: y_eval.len() });
        }
        Ok(x_eval.iter().zip(y_eval).map(|(&x, &y)| self.predict(x) - y).collect())
    }

    /// Residual sum of squares on an evaluation set.
    pub fn rss(&self, x_eval: &[f64], y_eval: &[f64]) -> Result<f64> {
        Ok(self.residuals(x_eval, y_eval)?.iter().map(|r| r * r).sum())
    }
}

/// Fits `y ≈ c₀ + c₁·φ(x)` by ordinary least squares.
///
/// Uses the centered closed form (slope = S_φy/S_φφ), which stays
/// well-conditioned even when the predictor has a large mean.
pub fn fit(x: &[f64], y: &[f64], feature_map: FeatureMap) -> Result<FittedModel> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    if x.len() < 2 {
        return Err(Error::InvalidParameter("fit needs at least 2 samples"));
    }
    let phi: Vec<f64> = x.iter().map(|&v| feature_map.apply(v)).collect();
    let n = phi.len() as f64;
    let phi_mean = phi.iter().sum::<f64>() / n;
    let y_mean = y.iter().sum::<f64>() / n;
    let mut s_pp = 0.0;
    let mut s_py = 0.0;
    let mut magnitude = 0.0;
    for (&p, &yv) in phi.iter().zip(y) {
        let dp = p - phi_mean;
        s_pp += dp * dp;
        s_py += dp * (yv - y_mean);
        magnitude += p * p;
    }
    if s_pp <= magnitude * 1e-24 {
        return Err(Error::DegenerateFit("predictor is constant after feature mapping"));
    }
    let slope = s_py / s_pp;
    let intercept = y_mean - slope * phi_mean;
    Ok(FittedModel { coefficients: vec![intercept, slope], feature_map })
}

/// A random partition of a paired sample into train and test parts.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitSample {
    pub train: PairedSample,
    pub test: PairedSample,
}

/// Splits a pair into train/test parts by a uniform random permutation.
///
/// Deterministic given `seed`; the train size is `round(fraction·n)` clamped
/// so both parts stay non-empty.
pub fn split(pair: &PairedSample, train_fraction: f64, seed: u64) -> Result<SplitSample> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::InvalidParameter("train fraction must lie strictly between 0 and 1"));
    }
    let n = pair.len();
    if n < 5 {
        return Err(Error::InvalidParameter("split needs at least 5 samples"));
    }
    let n_train = ((train_fraction * n as f64).round() as usize).clamp(1, n - 1);
    let mut indices: Vec<usize> = (0..n).collect();
    indices.shuffle(&mut rng::stream(seed));
    let gather = |slice: &[usize]| -> PairedSample {
        PairedSample {
            x: slice.iter().map(|&k| pair.x[k]).collect(),
            y: slice.iter().map(|&k| pair.y[k]).collect(),
        }
    };
    Ok(SplitSample { train: gather(&indices[..n_train]), test: gather(&indices[n_train..]) })
}

/// Unbiased sample variance of the OLS residuals of `target` on `predictors`
/// (identity features, intercept included). An empty predictor list returns
/// the plain sample variance of `target`.
pub fn conditional_residual_variance(target: &[f64], predictors: &[&[f64]]) -> Result<f64> {
    conditional_residual_variance_with_features(target, predictors, FeatureMap::Identity)
}

/// [`conditional_residual_variance`] with each predictor passed through a
/// feature transform first, so a known-nonlinear relation can be captured by
/// the same linear machinery.
pub fn conditional_residual_variance_with_features(
    target: &[f64],
    predictors: &[&[f64]],
    feature_map: FeatureMap,
) -> Result<f64> {
    let n = target.len();
    if n < 2 {
        return Err(Error::InvalidParameter("variance needs at least 2 samples"));
    }
    for p in predictors {
        if p.len() != n {
            return Err(Error::LengthMismatch { left: n, right: p.len() });
        }
    }
    let residuals = match feature_map {
        FeatureMap::Identity => regress_out(target, predictors)?,
        _ => {
            let mapped: Vec<Vec<f64>> = predictors
                .iter()
                .map(|col| col.iter().map(|&v| feature_map.apply(v)).collect())
                .collect();
            let mapped_refs: Vec<&[f64]> = mapped.iter().map(Vec::as_slice).collect();
            regress_out(target, &mapped_refs)?
        }
    };
    let mean = residuals.iter().sum::<f64>() / n as f64;
    Ok(residuals.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / (n - 1) as f64)
}

/// Residuals of `target` after removing the least-squares contribution of
/// `predictors` (with intercept). Centered data is used throughout, so the
/// returned residuals have mean zero up to rounding.
pub(crate) fn regress_out(target: &[f64], predictors: &[&[f64]]) -> Result<Vec<f64>> {
    let n = target.len();
    let t_mean = target.iter().sum::<f64>() / n as f64;
    let mut centered_target: Vec<f64> = target.iter().map(|&t| t - t_mean).collect();
    if predictors.is_empty() {
        return Ok(centered_target);
    }

    let p = predictors.len();
    let centered: Vec<Vec<f64>> = predictors
        .iter()
        .map(|col| {
            let m = col.iter().sum::<f64>() / n as f64;
            col.iter().map(|&v| v - m).collect()
        })
        .collect();

    // Normal equations on centered data: (ZᵀZ) β = Zᵀ t.
    let mut gram = vec![vec![0.0_f64; p]; p];
    let mut rhs = vec![0.0_f64; p];
    for a in 0..p {
        for b in a..p {
            let dot: f64 = centered[a].iter().zip(&centered[b]).map(|(u, v)| u * v).sum();
            gram[a][b] = dot;
            gram[b][a] = dot;
        }
        rhs[a] = centered[a].iter().zip(&centered_target).map(|(u, v)| u * v).sum();
    }
    let beta = solve_spd(&mut gram, &mut rhs)?;
    for (k, r) in centered_target.iter_mut().enumerate() {
        for (j, col) in centered.iter().enumerate() {
            *r -= beta[j] * col[k];
        }
    }
    Ok(centered_target)
}

/// Gaussian elimination with partial pivoting for the (small, symmetric
/// positive semidefinite) normal-equation systems above.
fn solve_spd(a: &mut [Vec<f64>], b: &mut [f64]) -> Result<Vec<f64>> {
    let p = b.len();
    let scale = a
        .iter()
        .map(|row| row.iter().fold(0.0_f64, |acc, v| acc.max(v.abs())))
        .fold(0.0_f64, f64::max);
    for col in 0..p {
        let pivot_row = (col..p)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[pivot_row][col].abs() <= scale * 1e-12 {
            return Err(Error::DegenerateFit("collinear or constant predictors"));
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in (col + 1)..p {
            let factor = a[row][col] / a[col][col];
            for k in col..p {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0_f64; p];
    for col in (0..p).rev() {
        let mut acc = b[col];
        for k in (col + 1)..p {
            acc -= a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Ok(x)
}
