//! Differential Shannon entropy estimators for scalar samples, in nats:
//! Kozachenko–Leonenko k-nearest-neighbour estimates, two maximum-entropy
//! approximations in the style of Hyvärinen's negentropy family, and
//! Vasicek's spacing estimator.

use alloc::vec::Vec;

#[allow(unused_imports)] // resolves float math in no_std builds
use num_traits::Float;

use crate::estimator::Estimator;
use crate::special::digamma_int;
use crate::{Error, Result};

/// A differential-entropy estimate (nats) tagged with its estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyEstimate {
    pub value: f64,
    pub estimator_id: Estimator,
}

/// Entropy of a Normal with unit variance, ½·ln(2πe).
pub(crate) fn gaussian_entropy_nats() -> f64 {
    0.5 * (2.0 * core::f64::consts::PI * core::f64::consts::E).ln()
}

/// Validates the input and breaks ties by a deterministic jitter of
/// magnitude at most 1e−12·range, keyed on the sample index. Returns the
/// (possibly jittered) values; constant vectors are rejected.
fn prepare(x: &[f64], min_n: usize) -> Result<Vec<f64>> {
    if x.len() < min_n {
        return Err(Error::InvalidParameter("too few samples for entropy estimation"));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in x {
        if !v.is_finite() {
            return Err(Error::InvalidParameter("entropy input must be finite"));
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if hi <= lo {
        return Err(Error::DegenerateInput("constant vector has no differential entropy"));
    }
    let mut sorted: Vec<f64> = x.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let has_ties = sorted.windows(2).any(|w| w[0] == w[1]);
    let mut values = x.to_vec();
    if has_ties {
        let range = hi - lo;
        let n = values.len() as f64;
        for (idx, v) in values.iter_mut().enumerate() {
            *v += 1e-12 * range * ((idx + 1) as f64 / n);
        }
    }
    Ok(values)
}

/// Kozachenko–Leonenko estimator from the k-th nearest-neighbour distances:
/// `H = ln(n−1) − ψ(k) + ln 2 + (1/n)·Σ ln ρ_k(t)` for 1-D data.
///
/// Exact nearest neighbours come from a sorted two-pointer sweep; results
/// carry the id of the matching preset (k = 1, 3, 5).
pub fn shannon_knn(x: &[f64], k: usize) -> Result<EntropyEstimate> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1"));
    }
    let values = prepare(x, k + 2)?;
    let n = values.len();
    let mut sorted = values;
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());

    let mut log_sum = 0.0;
    for t in 0..n {
        // In sorted order the k nearest neighbours of s[t] are among the k
        // immediate predecessors and successors; take the closer side k times.
        let mut left = t;
        let mut right = t;
        let mut rho = 0.0;
        for _ in 0..k {
            let dl = if left > 0 { sorted[t] - sorted[left - 1] } else { f64::INFINITY };
            let dr = if right + 1 < n { sorted[right + 1] - sorted[t] } else { f64::INFINITY };
            if dl <= dr {
                left -= 1;
                rho = dl;
            } else {
                right += 1;
                rho = dr;
            }
        }
        if !(rho > 0.0) {
            return Err(Error::DegenerateInput("duplicate points defeat neighbour distances"));
        }
        log_sum += rho.ln();
    }
    let value = ((n - 1) as f64).ln() - digamma_int(k) + 2.0_f64.ln() + log_sum / n as f64;
    let estimator_id = match k {
        3 => Estimator::ShKnn2,
        5 => Estimator::ShKnn3,
        _ => Estimator::ShKnn,
    };
    Ok(EntropyEstimate { value, estimator_id })
}

/// Shared body of the two maximum-entropy approximations.
///
/// Standardizes about the sample mean (σ̂ with divisor n−1), subtracts the
/// non-Gaussianity corrections from the Gaussian entropy, and adds ln σ̂.
fn maxent(x: &[f64], second_correction: impl Fn(f64) -> f64, target: f64, k2: f64, id: Estimator) -> Result<EntropyEstimate> {
    let values = prepare(x, 4)?;
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let sigma = (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt();
    if !(sigma > 0.0) {
        return Err(Error::DegenerateInput("zero variance input"));
    }
    let k1 = 36.0 / (8.0 * 3.0_f64.sqrt() - 9.0);
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    for &v in &values {
        let z = (v - mean) / sigma;
        m1 += z * (-z * z / 2.0).exp();
        m2 += second_correction(z);
    }
    m1 /= n;
    m2 /= n;
    let value = gaussian_entropy_nats() - (k1 * m1 * m1 + k2 * (m2 - target) * (m2 - target))
        + sigma.ln();
    Ok(EntropyEstimate { value, estimator_id: id })
}

/// Maximum-entropy approximation with G₂(z) = |z|,
/// k₂ = 1/(2 − 6/π), E|ν| = √(2/π) under the Gaussian reference.
pub fn shannon_maxent1(x: &[f64]) -> Result<EntropyEstimate> {
    let k2 = 1.0 / (2.0 - 6.0 / core::f64::consts::PI);
    let target = (2.0 / core::f64::consts::PI).sqrt();
    maxent(x, |z| z.abs(), target, k2, Estimator::ShMaxEnt1)
}

/// Maximum-entropy approximation with G₂(z) = exp(−z²/2),
/// k₂ = 24/(16√3 − 27), E[G₂(ν)] = √(1/2) under the Gaussian reference.
pub fn shannon_maxent2(x: &[f64]) -> Result<EntropyEstimate> {
    let k2 = 24.0 / (16.0 * 3.0_f64.sqrt() - 27.0);
    let target = 0.5_f64.sqrt();
    maxent(x, |z| (-z * z / 2.0).exp(), target, k2, Estimator::ShMaxEnt2)
}

/// Vasicek's spacing estimator with window m = ⌊√n⌋ and clamped order
/// statistics: `H = (1/n)·Σ ln( n·(x₍t+m₎ − x₍t−m₎)/(2m) )`.
pub fn vasicek_spacing(x: &[f64]) -> Result<EntropyEstimate> {
    let values = prepare(x, 4)?;
    let n = values.len();
    let mut sorted = values;
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let m = (n as f64).sqrt().floor() as usize;
    let scale = n as f64 / (2.0 * m as f64);
    let mut log_sum = 0.0;
    for t in 0..n {
        let upper = sorted[(t + m).min(n - 1)];
        let lower = sorted[t.saturating_sub(m)];
        let spacing = upper - lower;
        if !(spacing > 0.0) {
            return Err(Error::DegenerateInput("zero spacing despite tie-breaking jitter"));
        }
        log_sum += (scale * spacing).ln();
    }
    Ok(EntropyEstimate { value: log_sum / n as f64, estimator_id: Estimator::ShSpacingV })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::DistributionSpec;

    fn normal_sample(n: usize, seed: u64) -> Vec<f64> {
        DistributionSpec::normal(0.0, 1.0).sample(n, seed).unwrap()
    }

    /// Brute-force O(n²) k-th nearest neighbour distances.
    fn knn_brute_force(x: &[f64], k: usize) -> f64 {
        let n = x.len();
        let mut log_sum = 0.0;
        for t in 0..n {
            let mut d: Vec<f64> = (0..n).filter(|&s| s != t).map(|s| (x[t] - x[s]).abs()).collect();
            d.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
            log_sum += d[k - 1].ln();
        }
        ((n - 1) as f64).ln() - digamma_int(k) + 2.0_f64.ln() + log_sum / n as f64
    }

    #[test]
    fn knn_matches_brute_force_oracle() {
        let x = normal_sample(60, 1001);
        for k in [1, 3, 5] {
            let fast = shannon_knn(&x, k).unwrap().value;
            let slow = knn_brute_force(&x, k);
            assert!((fast - slow).abs() < 1e-12, "k={k}: {fast} vs {slow}");
        }
    }

    #[test]
    fn knn_hits_analytic_normal_and_uniform() {
        let gauss = shannon_knn(&normal_sample(10_000, 2), 3).unwrap().value;
        assert!((gauss - gaussian_entropy_nats()).abs() < 0.05, "gauss = {gauss}");

        let unit = DistributionSpec::uniform(0.5, 0.5).sample(10_000, 3).unwrap();
        let uniform = shannon_knn(&unit, 3).unwrap().value;
        assert!(uniform.abs() < 0.05, "uniform = {uniform}");
    }

    #[test]
    fn knn_scaling_law() {
        let x = normal_sample(10_000, 4);
        let doubled: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        for k in [1, 3, 5] {
            let gap = shannon_knn(&doubled, k).unwrap().value - shannon_knn(&x, k).unwrap().value;
            assert!((gap - 2.0_f64.ln()).abs() < 0.02, "k={k}: gap = {gap}");
        }
    }

    #[test]
    fn maxent_normal_targets() {
        let x = normal_sample(100_000, 5);
        let h1 = shannon_maxent1(&x).unwrap().value;
        let h2 = shannon_maxent2(&x).unwrap().value;
        assert!((h1 - gaussian_entropy_nats()).abs() < 0.02, "maxent1 = {h1}");
        assert!((h2 - gaussian_entropy_nats()).abs() < 0.02, "maxent2 = {h2}");
    }

    #[test]
    fn maxent_laplace_stays_below_gaussian_bound() {
        let x = DistributionSpec::laplace(0.0, 1.0).sample(100_000, 6).unwrap();
        let h1 = shannon_maxent1(&x).unwrap().value;
        // Gaussian entropy at matched variance 2b² = 2: ½ln(2πe·2) ≈ 1.766
        let bound = gaussian_entropy_nats() + 0.5 * 2.0_f64.ln();
        assert!(h1 < bound, "h1 = {h1}, bound = {bound}");
    }

    #[test]
    fn maxent_location_invariance() {
        let x = normal_sample(5_000, 7);
        let shifted: Vec<f64> = x.iter().map(|v| v + 100.0).collect();
        for f in [shannon_maxent1, shannon_maxent2] {
            let a = f(&x).unwrap().value;
            let b = f(&shifted).unwrap().value;
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn maxent_variants_differ_but_respect_gaussian_maximality() {
        let x = DistributionSpec::uniform(0.0, 1.0).sample(20_000, 8).unwrap();
        let h1 = shannon_maxent1(&x).unwrap().value;
        let h2 = shannon_maxent2(&x).unwrap().value;
        assert!(h1 != h2);
        let n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / n;
        let sigma2 = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
        let bound = gaussian_entropy_nats() + 0.5 * sigma2.ln() + 1e-9;
        assert!(h1 <= bound && h2 <= bound);
    }

    #[test]
    fn maxent_scale_shift() {
        let x = normal_sample(5_000, 9);
        let scaled: Vec<f64> = x.iter().map(|v| 7.5 * v).collect();
        for f in [shannon_maxent1, shannon_maxent2] {
            let gap = f(&scaled).unwrap().value - f(&x).unwrap().value;
            assert!((gap - 7.5_f64.ln()).abs() < 1e-6, "gap = {gap}");
        }
    }

    #[test]
    fn vasicek_hits_analytic_targets() {
        let unit = DistributionSpec::uniform(0.5, 0.5).sample(10_000, 10).unwrap();
        let h_uniform = vasicek_spacing(&unit).unwrap().value;
        assert!(h_uniform.abs() < 0.03, "uniform = {h_uniform}");

        let h_gauss = vasicek_spacing(&normal_sample(10_000, 11)).unwrap().value;
        assert!((h_gauss - gaussian_entropy_nats()).abs() < 0.05, "gauss = {h_gauss}");
    }

    #[test]
    fn vasicek_is_permutation_invariant_and_scale_covariant() {
        let mut x = normal_sample(500, 12);
        let h = vasicek_spacing(&x).unwrap().value;
        x.reverse();
        x.rotate_left(137);
        assert_eq!(vasicek_spacing(&x).unwrap().value, h);

        let scaled: Vec<f64> = x.iter().map(|v| 0.3 * v).collect();
        let gap = vasicek_spacing(&scaled).unwrap().value - h;
        assert!((gap - 0.3_f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn translation_invariance_all_estimators() {
        let x = normal_sample(2_000, 13);
        let shifted: Vec<f64> = x.iter().map(|v| v + 42.0).collect();
        let estimates = |v: &[f64]| {
            [
                shannon_knn(v, 1).unwrap().value,
                shannon_knn(v, 3).unwrap().value,
                shannon_knn(v, 5).unwrap().value,
                shannon_maxent1(v).unwrap().value,
                shannon_maxent2(v).unwrap().value,
                vasicek_spacing(v).unwrap().value,
            ]
        };
        for (a, b) in estimates(&x).iter().zip(estimates(&shifted)) {
            assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        }
    }

    #[test]
    fn constant_input_is_degenerate_everywhere() {
        let x = [3.0; 64];
        assert!(matches!(shannon_knn(&x, 1), Err(Error::DegenerateInput(_))));
        assert!(matches!(shannon_maxent1(&x), Err(Error::DegenerateInput(_))));
        assert!(matches!(shannon_maxent2(&x), Err(Error::DegenerateInput(_))));
        assert!(matches!(vasicek_spacing(&x), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn ties_are_jittered_to_finite_values() {
        let x: Vec<f64> = (0..200).map(|k| (k % 10) as f64).collect();
        assert!(shannon_knn(&x, 3).unwrap().value.is_finite());
        assert!(vasicek_spacing(&x).unwrap().value.is_finite());
    }

    #[test]
    fn estimator_ids_follow_presets() {
        let x = normal_sample(64, 14);
        assert_eq!(shannon_knn(&x, 1).unwrap().estimator_id, Estimator::ShKnn);
        assert_eq!(shannon_knn(&x, 3).unwrap().estimator_id, Estimator::ShKnn2);
        assert_eq!(shannon_knn(&x, 5).unwrap().estimator_id, Estimator::ShKnn3);
        assert_eq!(vasicek_spacing(&x).unwrap().estimator_id, Estimator::ShSpacingV);
    }
}
