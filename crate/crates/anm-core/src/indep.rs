//! Dependence measures between two scalar samples: HSIC with an RBF kernel
//! (full-rank, gamma null test, and incomplete-Cholesky low-rank variants),
//! distance covariance and correlation (Székely & Rizzo's energy statistics),
//! and Hoeffding's Phi, a copula-based rank measure.
//!
//! All scores are nonnegative (clamped when floating-point centering leaves
//! a tiny negative residue) and grow with the strength of dependence.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // resolves float math in no_std builds
use num_traits::Float;

use crate::estimator::Estimator;
use crate::special::gamma_quantile;
use crate::{Error, Result};

/// A nonnegative dependence score tagged with its estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DependenceScore {
    pub value: f64,
    pub estimator_id: Estimator,
}

/// Outcome of the HSIC gamma test: the unnormalized statistic n·HSIC, the
/// (1−α) quantile of the moment-matched gamma null, and the verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaTestResult {
    pub statistic: f64,
    pub threshold: f64,
    pub independent: bool,
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    if x.len() < 4 {
        return Err(Error::InvalidParameter("dependence estimation needs at least 4 samples"));
    }
    if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("dependence estimation requires finite inputs"));
    }
    Ok(x.len())
}

/// Median heuristic: the median of all pairwise absolute differences.
///
/// Falls back to the mean of the positive differences when more than half of
/// the pairs coincide; a fully constant input has no usable bandwidth.
fn median_bandwidth(v: &[f64]) -> Result<f64> {
    let n = v.len();
    let mut d = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            d.push((v[i] - v[j]).abs());
        }
    }
    let len = d.len();
    let mid = len / 2;
    d.select_nth_unstable_by(mid, |a, b| a.partial_cmp(b).unwrap());
    let upper = d[mid];
    let median = if len % 2 == 1 {
        upper
    } else {
        let lower = d[..mid].iter().fold(f64::NEG_INFINITY, |acc, &v| acc.max(v));
        0.5 * (lower + upper)
    };
    if median > 0.0 {
        return Ok(median);
    }
    let (sum, count) = d.iter().filter(|&&v| v > 0.0).fold((0.0, 0usize), |(s, c), &v| (s + v, c + 1));
    if count == 0 {
        return Err(Error::DegenerateInput("constant input has no kernel bandwidth"));
    }
    Ok(sum / count as f64)
}

/// Flattened symmetric RBF Gram matrix K_ij = exp(−(v_i−v_j)²/(2σ²)).
fn rbf_gram(v: &[f64], sigma: f64) -> Vec<f64> {
    let n = v.len();
    let inv = 1.0 / (2.0 * sigma * sigma);
    let mut k = vec![0.0_f64; n * n];
    for i in 0..n {
        k[i * n + i] = 1.0;
        for j in (i + 1)..n {
            let d = v[i] - v[j];
            let val = (-d * d * inv).exp();
            k[i * n + j] = val;
            k[j * n + i] = val;
        }
    }
    k
}

/// In-place double centering of a flattened symmetric matrix: HMH with
/// H = I − (1/n)𝟙𝟙ᵀ.
fn double_center(m: &mut [f64], n: usize) {
    let mut row_means = vec![0.0_f64; n];
    for i in 0..n {
        row_means[i] = m[i * n..(i + 1) * n].iter().sum::<f64>() / n as f64;
    }
    let grand = row_means.iter().sum::<f64>() / n as f64;
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] += grand - row_means[i] - row_means[j];
        }
    }
}

/// Biased V-statistic HSIC: (1/n²)·tr(KHLH) with RBF Gram matrices and
/// median-heuristic bandwidths per variable.
pub fn hsic(x: &[f64], y: &[f64]) -> Result<DependenceScore> {
    let n = check_pair(x, y)?;
    let sigma_x = median_bandwidth(x)?;
    let sigma_y = median_bandwidth(y)?;
    let mut k = rbf_gram(x, sigma_x);
    double_center(&mut k, n);
    // ⟨HKH, L⟩ = ⟨HKH, HLH⟩ because HKH is already doubly centered,
    // so L can be streamed without materializing it.
    let inv = 1.0 / (2.0 * sigma_y * sigma_y);
    let mut acc = 0.0;
    for i in 0..n {
        acc += k[i * n + i]; // L_ii = 1
        for j in (i + 1)..n {
            let d = y[i] - y[j];
            acc += 2.0 * k[i * n + j] * (-d * d * inv).exp();
        }
    }
    Ok(DependenceScore {
        value: (acc / (n * n) as f64).max(0.0),
        estimator_id: Estimator::Hsic,
    })
}

/// HSIC independence test against a two-moment gamma approximation of the
/// null distribution of n·HSIC (Gretton et al.'s test).
///
/// Needs n ≥ 6: the variance moment carries (n−4)(n−5) factors that vanish
/// below that.
pub fn hsic_gamma_test(x: &[f64], y: &[f64], alpha: f64) -> Result<GammaTestResult> {
    let n = check_pair(x, y)?;
    if n < 6 {
        return Err(Error::InvalidParameter("gamma test needs at least 6 samples"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter("alpha must lie strictly between 0 and 1"));
    }
    let nf = n as f64;
    let sigma_x = median_bandwidth(x)?;
    let sigma_y = median_bandwidth(y)?;
    let mut k = rbf_gram(x, sigma_x);
    let mut l = rbf_gram(y, sigma_y);
    // Off-diagonal means of the raw Gram matrices (RBF diagonal is 1).
    let mu_x = (k.iter().sum::<f64>() - nf) / (nf * (nf - 1.0));
    let mu_y = (l.iter().sum::<f64>() - nf) / (nf * (nf - 1.0));
    double_center(&mut k, n);
    double_center(&mut l, n);

    let mut stat_acc = 0.0;
    let mut var_acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let prod = k[i * n + j] * l[i * n + j];
            stat_acc += prod;
            if i != j {
                var_acc += prod * prod;
            }
        }
    }
    let statistic = (stat_acc / nf).max(0.0); // n·HSIC_b

    let var_hsic = (var_acc / 36.0) / (nf * (nf - 1.0))
        * (72.0 * (nf - 4.0) * (nf - 5.0) / (nf * (nf - 1.0) * (nf - 2.0) * (nf - 3.0)));
    let m_hsic = (1.0 + mu_x * mu_y - mu_x - mu_y) / nf;
    if !(var_hsic > 0.0) || !(m_hsic > 0.0) {
        return Err(Error::DegenerateInput("gamma moment matching failed"));
    }
    let shape = m_hsic * m_hsic / var_hsic;
    let scale = nf * var_hsic / m_hsic;
    let threshold = gamma_quantile(1.0 - alpha, shape, scale);
    Ok(GammaTestResult { statistic, threshold, independent: statistic < threshold })
}

/// Pivoted incomplete Cholesky factorization of the RBF Gram matrix,
/// stopping when the residual trace drops to `eta·n` (Fine–Scheinberg).
/// Returns the factor columns; `K ≈ G·Gᵀ` with `G = [cols...]`.
pub fn rbf_incomplete_cholesky(v: &[f64], bandwidth: f64, eta: f64) -> Result<Vec<Vec<f64>>> {
    if !(bandwidth > 0.0) || !(eta > 0.0) {
        return Err(Error::InvalidParameter("bandwidth and eta must be positive"));
    }
    let n = v.len();
    let inv = 1.0 / (2.0 * bandwidth * bandwidth);
    let kernel = |a: f64, b: f64| {
        let d = a - b;
        (-d * d * inv).exp()
    };
    let mut d = vec![1.0_f64; n]; // residual diagonal (RBF diag = 1)
    let mut cols: Vec<Vec<f64>> = Vec::new();
    loop {
        let trace: f64 = d.iter().sum();
        if trace <= eta * n as f64 || cols.len() == n {
            break;
        }
        let (pivot, &pivot_val) = d
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        if pivot_val <= 0.0 {
            break;
        }
        let sq = pivot_val.sqrt();
        let mut col = vec![0.0_f64; n];
        for i in 0..n {
            let prior: f64 = cols.iter().map(|c| c[i] * c[pivot]).sum();
            col[i] = (kernel(v[i], v[pivot]) - prior) / sq;
        }
        for i in 0..n {
            d[i] -= col[i] * col[i];
        }
        cols.push(col);
    }
    Ok(cols)
}

/// HSIC from low-rank incomplete-Cholesky factors of both Gram matrices:
/// (1/n²)·‖(HG_K)ᵀ(HG_L)‖²_F, costing O(n·r_K·r_L) after factorization.
pub fn hsic_incomplete_cholesky(x: &[f64], y: &[f64], eta: f64) -> Result<DependenceScore> {
    let n = check_pair(x, y)?;
    if !(eta > 0.0) {
        return Err(Error::InvalidParameter("eta must be positive"));
    }
    let center = |cols: Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        cols.into_iter()
            .map(|mut c| {
                let m = c.iter().sum::<f64>() / n as f64;
                for v in &mut c {
                    *v -= m;
                }
                c
            })
            .collect()
    };
    let gk = center(rbf_incomplete_cholesky(x, median_bandwidth(x)?, eta)?);
    let gl = center(rbf_incomplete_cholesky(y, median_bandwidth(y)?, eta)?);
    let mut acc = 0.0;
    for ck in &gk {
        for cl in &gl {
            let dot: f64 = ck.iter().zip(cl.iter()).map(|(a, b)| a * b).sum();
            acc += dot * dot;
        }
    }
    let estimator_id = if eta <= 1e-4 { Estimator::HsicIc } else { Estimator::HsicIc2 };
    Ok(DependenceScore { value: acc / (n * n) as f64, estimator_id })
}

/// Row means and grand mean of the pairwise-distance matrix of `v`.
fn distance_means(v: &[f64]) -> (Vec<f64>, f64) {
    let n = v.len();
    let mut row_means = vec![0.0_f64; n];
    for i in 0..n {
        let mut s = 0.0;
        for j in 0..n {
            s += (v[i] - v[j]).abs();
        }
        row_means[i] = s / n as f64;
    }
    let grand = row_means.iter().sum::<f64>() / n as f64;
    (row_means, grand)
}

/// The three double-centered distance sums: (⟨A,B⟩, ⟨A,A⟩, ⟨B,B⟩)/n².
fn distance_stats(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len();
    let (rm_x, g_x) = distance_means(x);
    let (rm_y, g_y) = distance_means(y);
    let mut v_xy = 0.0;
    let mut v_xx = 0.0;
    let mut v_yy = 0.0;
    for i in 0..n {
        for j in 0..n {
            let a = (x[i] - x[j]).abs() - rm_x[i] - rm_x[j] + g_x;
            let b = (y[i] - y[j]).abs() - rm_y[i] - rm_y[j] + g_y;
            v_xy += a * b;
            v_xx += a * a;
            v_yy += b * b;
        }
    }
    let n2 = (n * n) as f64;
    (v_xy / n2, v_xx / n2, v_yy / n2)
}

/// Distance covariance: square root of the nonnegative part of the
/// double-centered pairwise-distance statistic (1/n²)·ΣΣ A_jk·B_jk.
pub fn dist_cov(x: &[f64], y: &[f64]) -> Result<DependenceScore> {
    check_pair(x, y)?;
    let (v_xy, _, _) = distance_stats(x, y);
    Ok(DependenceScore { value: v_xy.max(0.0).sqrt(), estimator_id: Estimator::DistCov })
}

/// Distance correlation: dCov standardized by the distance variances,
/// defined as 0 when either distance variance vanishes; lies in [0, 1].
pub fn dist_corr(x: &[f64], y: &[f64]) -> Result<DependenceScore> {
    check_pair(x, y)?;
    let (v_xy, v_xx, v_yy) = distance_stats(x, y);
    let dvar_x = v_xx.max(0.0).sqrt();
    let dvar_y = v_yy.max(0.0).sqrt();
    let value = if dvar_x * dvar_y > 0.0 {
        (v_xy.max(0.0).sqrt() / (dvar_x * dvar_y).sqrt()).max(0.0)
    } else {
        0.0
    };
    Ok(DependenceScore { value, estimator_id: Estimator::DistCorr })
}

/// Mid-ranks (average rank over tied blocks), 1-based.
fn mid_ranks(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap());
    let mut ranks = vec![0.0_f64; n];
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && v[order[end + 1]] == v[order[start]] {
            end += 1;
        }
        let avg = (start + end) as f64 / 2.0 + 1.0;
        for &idx in &order[start..=end] {
            ranks[idx] = avg;
        }
        start = end + 1;
    }
    ranks
}

/// Hoeffding's Phi: √(90·mean squared deviation between the empirical copula
/// and the independence copula) over the n×n pseudo-observation grid. The
/// population value on comonotone data is 1.
pub fn hoeffding_phi(x: &[f64], y: &[f64]) -> Result<DependenceScore> {
    let n = check_pair(x, y)?;
    let rx = mid_ranks(x);
    let ry = mid_ranks(y);
    // Bucket each observation at the smallest grid point covering its rank,
    // then prefix-sum to get N(s,t) = #{i: rx_i ≤ s ∧ ry_i ≤ t}.
    let mut counts = vec![0u32; n * n];
    for i in 0..n {
        let p = rx[i].ceil() as usize - 1;
        let q = ry[i].ceil() as usize - 1;
        counts[p * n + q] += 1;
    }
    for s in 0..n {
        for t in 0..n {
            let mut c = counts[s * n + t];
            if s > 0 {
                c += counts[(s - 1) * n + t];
            }
            if t > 0 {
                c += counts[s * n + t - 1];
            }
            if s > 0 && t > 0 {
                c -= counts[(s - 1) * n + t - 1];
            }
            counts[s * n + t] = c;
        }
    }
    let nf = n as f64;
    let mut acc = 0.0;
    for s in 0..n {
        for t in 0..n {
            let dev = counts[s * n + t] as f64 / nf - ((s + 1) * (t + 1)) as f64 / (nf * nf);
            acc += dev * dev;
        }
    }
    let value = (90.0 * acc / (nf * nf)).sqrt();
    Ok(DependenceScore { value, estimator_id: Estimator::Hoeffding })
}
