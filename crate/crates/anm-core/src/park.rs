//! Causal ordering and parent recovery from conditional residual variances
//! (Park, 2020). The ordering stage repeatedly removes the variable whose
//! residual variance given the remaining ones is largest — a sink under the
//! equal-variance assumption — and the parent stage prunes each variable's
//! predecessors with partial-correlation tests.

use alloc::vec::Vec;

#[allow(unused_imports)] // resolves float math in no_std builds
use num_traits::Float;

use crate::regression::{
    conditional_residual_variance_with_features, regress_out, FeatureMap,
};
use crate::special::normal_quantile;
use crate::{Error, Result};

/// Variable indices from source to sink, as recovered by [`backward_ordering`].
pub type Ordering = Vec<usize>;

/// `parents[v]` lists the recovered parent indices of variable `v`, sorted
/// ascending. Variables keep their original indices, not ordering positions.
pub type ParentMap = Vec<Vec<usize>>;

fn check_variables(variables: &[&[f64]]) -> Result<usize> {
    if variables.len() < 2 {
        return Err(Error::InvalidParameter("need at least two variables"));
    }
    let n = variables[0].len();
    for v in variables {
        if v.len() != n {
            return Err(Error::LengthMismatch { left: n, right: v.len() });
        }
        if v.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidParameter("variables must be finite"));
        }
    }
    if n < 10 {
        return Err(Error::InvalidParameter("ordering needs at least 10 samples"));
    }
    Ok(n)
}

/// Recovers a causal ordering by backward elimination with plain linear
/// regressions.
///
/// Each round regresses every remaining variable on all other remaining
/// variables and removes the one with the largest unbiased residual
/// variance (ties break toward the smallest variable index). The removal
/// sequence, reversed, is the estimated source-to-sink ordering.
pub fn backward_ordering(variables: &[&[f64]]) -> Result<Ordering> {
    backward_ordering_with_features(variables, FeatureMap::Identity)
}

/// [`backward_ordering`] with each regression's predictors passed through a
/// feature transform, for data whose functional form is known up to the
/// transform.
pub fn backward_ordering_with_features(
    variables: &[&[f64]],
    features: FeatureMap,
) -> Result<Ordering> {
    check_variables(variables)?;
    let p = variables.len();
    let mut remaining: Vec<usize> = (0..p).collect();
    let mut removed: Vec<usize> = Vec::with_capacity(p);
    while !remaining.is_empty() {
        let mut best_pos = 0;
        let mut best_var = f64::NEG_INFINITY;
        for (pos, &candidate) in remaining.iter().enumerate() {
            let predictors: Vec<&[f64]> = remaining
                .iter()
                .filter(|&&other| other != candidate)
                .map(|&other| variables[other])
                .collect();
            let var = conditional_residual_variance_with_features(
                variables[candidate],
                &predictors,
                features,
            )?;
            // strict comparison keeps the earliest (smallest-index) maximum
            if var > best_var {
                best_var = var;
                best_pos = pos;
            }
        }
        removed.push(remaining.remove(best_pos));
    }
    removed.reverse();
    Ok(removed)
}

/// Tests conditional dependence of `a` and `b` given `conditioning` with the
/// Fisher z-transform of the partial correlation.
///
/// Returns `true` when dependence is detected at level `alpha`. A partial
/// correlation of magnitude one (a deterministic linear relation) is always
/// called dependent.
pub fn fisher_z_ci_test(
    a: &[f64],
    b: &[f64],
    conditioning: &[&[f64]],
    alpha: f64,
) -> Result<bool> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter("alpha must lie strictly between 0 and 1"));
    }
    let n = a.len();
    if b.len() != n {
        return Err(Error::LengthMismatch { left: n, right: b.len() });
    }
    for c in conditioning {
        if c.len() != n {
            return Err(Error::LengthMismatch { left: n, right: c.len() });
        }
    }
    let s = conditioning.len();
    if n <= s + 3 {
        return Err(Error::InvalidParameter(
            "the z-transform needs more samples than conditioning variables plus three",
        ));
    }
    for v in [a, b].into_iter().chain(conditioning.iter().copied()) {
        if v.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidParameter("inputs must be finite"));
        }
    }

    let res_a = regress_out(a, conditioning)?;
    let res_b = regress_out(b, conditioning)?;
    let (mut saa, mut sbb, mut sab) = (0.0, 0.0, 0.0);
    for (ra, rb) in res_a.iter().zip(&res_b) {
        saa += ra * ra;
        sbb += rb * rb;
        sab += ra * rb;
    }
    if saa <= 0.0 || sbb <= 0.0 {
        return Err(Error::DegenerateInput(
            "partial correlation undefined for a zero-variance residual",
        ));
    }
    let r = sab / (saa * sbb).sqrt();
    if r.abs() >= 1.0 {
        return Ok(true);
    }
    let statistic = ((n - s) as f64 - 3.0).sqrt() * libm::atanh(r);
    let threshold = normal_quantile(1.0 - alpha / 2.0);
    Ok(statistic.abs() > threshold)
}

/// Full pipeline: order the variables, then keep as parents of each variable
/// exactly those predecessors that remain dependent given the other
/// predecessors.
///
/// For the variable at ordering position `m`, each predecessor `π_j`
/// (`j < m`) is tested against it conditional on the remaining predecessors
/// `{π_1, …, π_{m−1}} \ {π_j}`; rejected predecessors are pruned.
pub fn uncertainty_scoring(variables: &[&[f64]], alpha: f64) -> Result<ParentMap> {
    uncertainty_scoring_with_features(variables, alpha, FeatureMap::Identity)
}

/// [`uncertainty_scoring`] with the ordering stage run on transformed
/// predictor coordinates. The pruning tests stay plain partial correlations:
/// the z-transform is defined on linear correlation.
pub fn uncertainty_scoring_with_features(
    variables: &[&[f64]],
    alpha: f64,
    features: FeatureMap,
) -> Result<ParentMap> {
    let ordering = backward_ordering_with_features(variables, features)?;
    let p = variables.len();
    let mut parents: ParentMap = alloc::vec![Vec::new(); p];
    for m in 1..p {
        let target = ordering[m];
        for j in 0..m {
            let candidate = ordering[j];
            let conditioning: Vec<&[f64]> = ordering[..m]
                .iter()
                .filter(|&&v| v != candidate)
                .map(|&v| variables[v])
                .collect();
            if fisher_z_ci_test(variables[target], variables[candidate], &conditioning, alpha)? {
                parents[target].push(candidate);
            }
        }
        parents[target].sort_unstable();
    }
    Ok(parents)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{AnmSpec, DistributionSpec, Exponent, Family};

    fn pair_spec(exponent: Exponent, cause: Family, noise: Family, i: f64) -> AnmSpec {
        let dist = |family| DistributionSpec { family, location: 0.0, scale: 1.0 };
        AnmSpec {
            beta: 1.0,
            exponent,
            cause: dist(cause),
            noise_base: dist(noise),
            noise_scale_factor: i,
        }
    }

    #[test]
    fn ordering_recovers_linear_gaussian_cause_first() {
        let s = pair_spec(Exponent::Linear, Family::Normal, Family::Normal, 1.0);
        let mut correct = 0;
        for trial in 0..100 {
            let pair = s.generate_pair(10_000, 1_000 + trial).unwrap();
            let ordering = backward_ordering(&[&pair.x, &pair.y]).unwrap();
            if ordering == [0, 1] {
                correct += 1;
            }
        }
        assert!(correct >= 99, "correct = {correct}");
    }

    #[test]
    fn ordering_removes_the_larger_conditional_variance_first() {
        // y = x + noise with sd 3: Var(y|x) = 9 dominates Var(x|y) < 1, so y
        // is removed first and therefore placed last.
        let s = pair_spec(Exponent::Linear, Family::Normal, Family::Normal, 3.0);
        let pair = s.generate_pair(2000, 7).unwrap();
        let ordering = backward_ordering(&[&pair.x, &pair.y]).unwrap();
        assert_eq!(ordering, [0, 1]);
        let swapped = backward_ordering(&[&pair.y, &pair.x]).unwrap();
        assert_eq!(swapped, [1, 0]);
    }

    #[test]
    fn ordering_of_equal_variance_independent_inputs_is_arbitrary() {
        let dist = DistributionSpec::normal(0.0, 1.0);
        let mut first = 0;
        let reps = 200;
        for trial in 0..reps {
            let x = dist.sample(500, 90_000 + 2 * trial).unwrap();
            let y = dist.sample(500, 90_001 + 2 * trial).unwrap();
            let ordering = backward_ordering(&[&x, &y]).unwrap();
            if ordering == [0, 1] {
                first += 1;
            }
        }
        assert!(
            (70..=130).contains(&first),
            "ordering [0, 1] came up {first} / {reps} times"
        );
    }

    #[test]
    fn z_test_flags_identical_vectors_as_dependent() {
        let a: Vec<f64> = (0..100).map(|k| (k as f64 * 0.7).sin()).collect();
        assert!(fisher_z_ci_test(&a, &a, &[], 0.05).unwrap());
    }

    #[test]
    fn z_test_matches_the_analytic_statistic_at_half_correlation() {
        // Build vectors with sample correlation exactly 0.5: centered
        // orthogonal unit-norm u, v give corr(u, u/2 + v·√3/4) = 1/2, and the
        // statistic is √(n−3)·atanh(1/2) ≈ 5.41 at n = 100 — dependent even
        // at alpha = 1e−5 (threshold ≈ 4.42), yet at n = 10 the same
        // correlation yields √7·atanh(1/2) ≈ 1.45 < 1.96 — not dependent.
        fn correlated_pair(n: usize) -> (Vec<f64>, Vec<f64>) {
            let u: Vec<f64> = (0..n)
                .map(|k| (2.0 * core::f64::consts::PI * (k as f64 + 0.5) / n as f64).sin())
                .collect();
            let v: Vec<f64> = (0..n)
                .map(|k| (2.0 * core::f64::consts::PI * (k as f64 + 0.5) / n as f64).cos())
                .collect();
            // same norm, orthogonal, zero mean by symmetry of the grid
            let b: Vec<f64> = u
                .iter()
                .zip(&v)
                .map(|(a, c)| 0.5 * a + (0.75f64).sqrt() * c)
                .collect();
            (u, b)
        }
        let (a, b) = correlated_pair(100);
        assert!(fisher_z_ci_test(&a, &b, &[], 0.05).unwrap());
        assert!(fisher_z_ci_test(&a, &b, &[], 1e-5).unwrap());
        let (a, b) = correlated_pair(10);
        assert!(!fisher_z_ci_test(&a, &b, &[], 0.05).unwrap());
    }

    #[test]
    fn z_test_size_is_near_alpha() {
        let dist = DistributionSpec::normal(0.0, 1.0);
        let mut rejections = 0;
        let reps = 200;
        for trial in 0..reps {
            let a = dist.sample(1000, 80_000 + 2 * trial).unwrap();
            let b = dist.sample(1000, 80_001 + 2 * trial).unwrap();
            if fisher_z_ci_test(&a, &b, &[], 0.05).unwrap() {
                rejections += 1;
            }
        }
        let rate = rejections as f64 / reps as f64;
        assert!((rate - 0.05).abs() <= 0.04, "rejection rate = {rate}");
    }

    #[test]
    fn z_test_conditioning_removes_confounded_correlation() {
        // a ← c → b: marginally dependent, independent given c.
        let dist = DistributionSpec::normal(0.0, 1.0);
        let c = dist.sample(2000, 1).unwrap();
        let na = dist.sample(2000, 2).unwrap();
        let nb = dist.sample(2000, 3).unwrap();
        let a: Vec<f64> = c.iter().zip(&na).map(|(ci, ni)| ci + ni).collect();
        let b: Vec<f64> = c.iter().zip(&nb).map(|(ci, ni)| ci + ni).collect();
        assert!(fisher_z_ci_test(&a, &b, &[], 0.05).unwrap());
        assert!(!fisher_z_ci_test(&a, &b, &[&c], 0.05).unwrap());
    }

    #[test]
    fn z_test_checks_preconditions() {
        // n must strictly exceed |conditioning| + 3
        let short = [1.0, 2.0, 3.0];
        assert!(fisher_z_ci_test(&short, &short, &[], 0.05).is_err());
        let borderline = [1.0, 2.0, 4.0, 8.0];
        assert!(fisher_z_ci_test(&borderline, &borderline, &[], 0.05).is_ok());
        assert!(fisher_z_ci_test(&borderline, &borderline, &[&borderline], 0.05).is_err());
        let a = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let b = [1.0, 2.0];
        assert!(fisher_z_ci_test(&a, &b, &[], 0.05).is_err());
        assert!(fisher_z_ci_test(&a, &a, &[], 0.0).is_err());
        assert!(fisher_z_ci_test(&a, &a, &[], 1.0).is_err());
    }

    #[test]
    fn full_pipeline_recovers_the_gaussian_pair() {
        let s = pair_spec(Exponent::Linear, Family::Normal, Family::Normal, 1.0);
        let mut correct = 0;
        for trial in 0..100 {
            let pair = s.generate_pair(1000, 30_000 + trial).unwrap();
            let parents = uncertainty_scoring(&[&pair.x, &pair.y], 0.05).unwrap();
            if parents[0].is_empty() && parents[1] == [0] {
                correct += 1;
            }
        }
        assert!(correct >= 95, "correct = {correct}");
    }

    #[test]
    fn full_pipeline_degrades_on_skewed_nonlinear_input() {
        // Under the cubic coordinate transform the forward residual variance
        // is just the (small) noise variance, while the backward regression
        // stays poor — at low noise the ordering flips and recovery fails.
        let s = pair_spec(Exponent::Cubic, Family::Laplace, Family::Uniform, 1.0);
        let mut correct = 0;
        for trial in 0..100 {
            let pair = s.generate_pair(1000, 31_000 + trial).unwrap();
            let parents =
                uncertainty_scoring_with_features(&[&pair.x, &pair.y], 0.05, FeatureMap::Cubic)
                    .unwrap();
            if parents[0].is_empty() && parents[1] == [0] {
                correct += 1;
            }
        }
        assert!(correct <= 70, "correct = {correct}");
    }

    #[test]
    fn transformed_ordering_recovers_at_high_noise() {
        // Same scenario as above but with the noise scaled up: the forward
        // conditional variance dominates again and the pipeline succeeds.
        let s = pair_spec(Exponent::Cubic, Family::Laplace, Family::Uniform, 10.0);
        let mut correct = 0;
        for trial in 0..100 {
            let pair = s.generate_pair(1000, 32_000 + trial).unwrap();
            let parents =
                uncertainty_scoring_with_features(&[&pair.x, &pair.y], 0.05, FeatureMap::Cubic)
                    .unwrap();
            if parents[0].is_empty() && parents[1] == [0] {
                correct += 1;
            }
        }
        assert!(correct >= 85, "correct = {correct}");
    }

    #[test]
    fn plain_linear_ordering_still_orders_cubic_data_correctly() {
        // Without the transform, the huge linear-fit residual variance of the
        // effect keeps the ordering right even on nonlinear data.
        let s = pair_spec(Exponent::Cubic, Family::Laplace, Family::Uniform, 1.0);
        let mut correct = 0;
        for trial in 0..50 {
            let pair = s.generate_pair(1000, 33_000 + trial).unwrap();
            if backward_ordering(&[&pair.x, &pair.y]).unwrap() == [0, 1] {
                correct += 1;
            }
        }
        assert!(correct >= 45, "correct = {correct}");
    }

    #[test]
    fn independent_inputs_rarely_gain_an_edge() {
        let dist = DistributionSpec::normal(0.0, 1.0);
        let mut clean = 0;
        let reps = 200;
        for trial in 0..reps {
            let x = dist.sample(500, 95_000 + 2 * trial).unwrap();
            let y = dist.sample(500, 95_001 + 2 * trial).unwrap();
            let parents = uncertainty_scoring(&[&x, &y], 0.05).unwrap();
            if parents[0].is_empty() && parents[1].is_empty() {
                clean += 1;
            }
        }
        let rate = clean as f64 / reps as f64;
        assert!((0.90..=0.99).contains(&rate), "edge-free rate = {rate}");
    }

    #[test]
    fn parents_respect_the_ordering() {
        // three correlated variables: x → y → z with extra noise
        let dist = DistributionSpec::normal(0.0, 1.0);
        let x = dist.sample(400, 11).unwrap();
        let ny = dist.sample(400, 12).unwrap();
        let nz = dist.sample(400, 13).unwrap();
        let y: Vec<f64> = x.iter().zip(&ny).map(|(a, b)| a + b).collect();
        let z: Vec<f64> = y.iter().zip(&nz).map(|(a, b)| a + b).collect();
        let vars: [&[f64]; 3] = [&x, &y, &z];
        let ordering = backward_ordering(&vars).unwrap();
        let parents = uncertainty_scoring(&vars, 0.05).unwrap();
        let position = |v: usize| ordering.iter().position(|&o| o == v).unwrap();
        for (v, pars) in parents.iter().enumerate() {
            for &p in pars {
                assert!(position(p) < position(v), "parent {p} not before {v} in {ordering:?}");
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = [1.0_f64; 20];
        assert!(backward_ordering(&[&a]).is_err());
        let b = [1.0_f64; 5];
        assert!(backward_ordering(&[&a, &b]).is_err());
        let c = [f64::NAN; 20];
        assert!(backward_ordering(&[&a, &c]).is_err());
    }
}
