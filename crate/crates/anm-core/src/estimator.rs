//! The twelve residual-scoring estimators, as a single dispatchable id.
//!
//! Six are dependence measures (the direction score is I(variable, residual))
//! and six are differential-entropy estimators (the score is the entropy sum
//! H(variable) + H(residual)). Lower scores mean "more plausibly the causal
//! direction" in both families.

use crate::{entropy, indep, Result};

/// Identifier of one scoring estimator, with its pinned configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Estimator {
    /// Full-rank HSIC with RBF kernel and median-heuristic bandwidths.
    Hsic,
    /// HSIC from incomplete-Cholesky factors at precision η = 1e−6.
    HsicIc,
    /// HSIC from incomplete-Cholesky factors at precision η = 1e−2.
    HsicIc2,
    /// Distance covariance.
    DistCov,
    /// Distance correlation.
    DistCorr,
    /// Hoeffding's Phi.
    Hoeffding,
    /// Kozachenko–Leonenko entropy, k = 1.
    ShKnn,
    /// Kozachenko–Leonenko entropy, k = 3.
    ShKnn2,
    /// Kozachenko–Leonenko entropy, k = 5.
    ShKnn3,
    /// Maximum-entropy approximation with G₂(z) = |z|.
    ShMaxEnt1,
    /// Maximum-entropy approximation with G₂(z) = exp(−z²/2).
    ShMaxEnt2,
    /// Vasicek spacing entropy.
    ShSpacingV,
}

impl Estimator {
    /// Every estimator, in canonical listing order.
    pub const ALL: [Estimator; 12] = [
        Estimator::Hsic,
        Estimator::HsicIc,
        Estimator::HsicIc2,
        Estimator::DistCov,
        Estimator::DistCorr,
        Estimator::Hoeffding,
        Estimator::ShKnn,
        Estimator::ShKnn2,
        Estimator::ShKnn3,
        Estimator::ShMaxEnt1,
        Estimator::ShMaxEnt2,
        Estimator::ShSpacingV,
    ];

    /// Canonical id string, as used in CLI arguments and CSV output.
    pub fn name(self) -> &'static str {
        match self {
            Estimator::Hsic => "HSIC",
            Estimator::HsicIc => "HSIC_IC",
            Estimator::HsicIc2 => "HSIC_IC2",
            Estimator::DistCov => "DISTCOV",
            Estimator::DistCorr => "DISTCORR",
            Estimator::Hoeffding => "HOEFFDING",
            Estimator::ShKnn => "SH_KNN",
            Estimator::ShKnn2 => "SH_KNN_2",
            Estimator::ShKnn3 => "SH_KNN_3",
            Estimator::ShMaxEnt1 => "SH_MAXENT1",
            Estimator::ShMaxEnt2 => "SH_MAXENT2",
            Estimator::ShSpacingV => "SH_SPACING_V",
        }
    }

    /// Inverse of [`Estimator::name`].
    pub fn parse(s: &str) -> Option<Estimator> {
        Estimator::ALL.into_iter().find(|e| e.name() == s)
    }

    /// Whether this estimator scores by entropy sums rather than dependence.
    pub fn is_entropy_based(self) -> bool {
        matches!(
            self,
            Estimator::ShKnn
                | Estimator::ShKnn2
                | Estimator::ShKnn3
                | Estimator::ShMaxEnt1
                | Estimator::ShMaxEnt2
                | Estimator::ShSpacingV
        )
    }

    /// Direction score Ĉ(variable, residual): dependence I(var, res) for the
    /// dependence family, entropy sum H(var) + H(res) for the entropy family.
    pub fn score(self, variable: &[f64], residual: &[f64]) -> Result<f64> {
        match self {
            Estimator::Hsic => Ok(indep::hsic(variable, residual)?.value),
            Estimator::HsicIc => {
                Ok(indep::hsic_incomplete_cholesky(variable, residual, 1e-6)?.value)
            }
            Estimator::HsicIc2 => {
                Ok(indep::hsic_incomplete_cholesky(variable, residual, 1e-2)?.value)
            }
            Estimator::DistCov => Ok(indep::dist_cov(variable, residual)?.value),
            Estimator::DistCorr => Ok(indep::dist_corr(variable, residual)?.value),
            Estimator::Hoeffding => Ok(indep::hoeffding_phi(variable, residual)?.value),
            Estimator::ShKnn => {
                Ok(entropy::shannon_knn(variable, 1)?.value + entropy::shannon_knn(residual, 1)?.value)
            }
            Estimator::ShKnn2 => {
                Ok(entropy::shannon_knn(variable, 3)?.value + entropy::shannon_knn(residual, 3)?.value)
            }
            Estimator::ShKnn3 => {
                Ok(entropy::shannon_knn(variable, 5)?.value + entropy::shannon_knn(residual, 5)?.value)
            }
            Estimator::ShMaxEnt1 => Ok(entropy::shannon_maxent1(variable)?.value
                + entropy::shannon_maxent1(residual)?.value),
            Estimator::ShMaxEnt2 => Ok(entropy::shannon_maxent2(variable)?.value
                + entropy::shannon_maxent2(residual)?.value),
            Estimator::ShSpacingV => Ok(entropy::vasicek_spacing(variable)?.value
                + entropy::vasicek_spacing(residual)?.value),
        }
    }
}
