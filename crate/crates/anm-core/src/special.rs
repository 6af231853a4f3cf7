//! Special functions backing the statistical tests.
//!
//! Only what the gamma approximation of the HSIC null and the Fisher-z test
//! actually need: the regularized lower incomplete gamma function, quantiles
//! of the gamma distribution, and quantiles of the standard normal. Built on
//! `libm` (`lgamma`, `erfc`) so the same code runs without `std`; accuracy is
//! checked against statrs in the test suite.

#[allow(unused_imports)] // resolves float math in no_std builds
use num_traits::Float;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const MAX_ITER: usize = 500;

/// Digamma function at a positive integer: ψ(k) = −γ + Σ_{j<k} 1/j.
pub fn digamma_int(k: usize) -> f64 {
    debug_assert!(k >= 1);
    let mut h = 0.0;
    for j in 1..k {
        h += 1.0 / j as f64;
    }
    h - EULER_GAMMA
}

/// Standard normal CDF via the complementary error function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}

/// Standard normal quantile.
///
/// Acklam's rational approximation polished with one Halley step against
/// [`normal_cdf`]; absolute error is at the 1e-15 level over (0, 1).
pub fn normal_quantile(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "normal_quantile requires p in (0,1)");

    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    let mut x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };

    // One Halley refinement: e = Φ(x) − p, u = e/φ(x).
    let e = normal_cdf(x) - p;
    let u = e * (2.0 * core::f64::consts::PI).sqrt() * (x * x / 2.0).exp();
    x -= u / (1.0 + x * u / 2.0);
    x
}

/// Regularized lower incomplete gamma function P(a, x) for a > 0, x ≥ 0.
///
/// Series expansion for x < a + 1, Lentz continued fraction for the upper
/// tail otherwise (the classic split that keeps both sides well-conditioned).
pub fn reg_lower_gamma(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "reg_lower_gamma requires a > 0, x >= 0");
    if x == 0.0 {
        return 0.0;
    }
    let log_prefactor = a * x.ln() - x - libm::lgamma(a);
    if x < a + 1.0 {
        // P(a,x) = x^a e^{-x} / Γ(a) · Σ_k x^k / (a(a+1)...(a+k))
        let mut term = 1.0 / a;
        let mut sum = term;
        for k in 1..MAX_ITER {
            term *= x / (a + k as f64);
            sum += term;
            if term.abs() < sum.abs() * 1e-16 {
                break;
            }
        }
        (log_prefactor.exp() * sum).clamp(0.0, 1.0)
    } else {
        // Q(a,x) via the continued fraction; P = 1 − Q.
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..MAX_ITER {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < TINY {
                d = TINY;
            }
            c = b + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (1.0 - log_prefactor.exp() * h).clamp(0.0, 1.0)
    }
}

/// Quantile of the gamma distribution with the given shape and scale.
///
/// Wilson–Hilferty start, then safeguarded Newton on P(shape, ·); the
/// bracket keeps the iteration from escaping (0, ∞) for extreme shapes.
pub fn gamma_quantile(p: f64, shape: f64, scale: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "gamma_quantile requires p in (0,1)");
    assert!(
        shape > 0.0 && scale > 0.0,
        "gamma_quantile requires positive shape and scale"
    );

    // Initial guess for the standard (scale 1) quantile.
    let z = normal_quantile(p);
    let g = 1.0 - 2.0 / (9.0 * shape) + z * (2.0 / (9.0 * shape)).sqrt();
    let mut x = shape * g * g * g;
    if !(x > 0.0) || !x.is_finite() {
        // Small-shape fallback: invert the leading series term P(a,x) ≈ x^a/Γ(a+1).
        x = ((p.ln() + libm::lgamma(shape) + shape.ln()) / shape).exp();
    }
    let mut lo = 0.0_f64;
    let mut hi = f64::INFINITY;
    let log_gamma_a = libm::lgamma(shape);
    for _ in 0..MAX_ITER {
        let f = reg_lower_gamma(shape, x) - p;
        if f > 0.0 {
            hi = hi.min(x);
        } else {
            lo = lo.max(x);
        }
        let log_pdf = (shape - 1.0) * x.ln() - x - log_gamma_a;
        let step = f / log_pdf.exp();
        let mut next = x - step;
        if !(next > lo && (next < hi || hi.is_infinite())) || !next.is_finite() {
            // Newton left the bracket: bisect instead.
            next = if hi.is_infinite() { x * 2.0 } else { 0.5 * (lo + hi) };
        }
        if (next - x).abs() <= 1e-14 * x.abs() {
            x = next;
            break;
        }
        x = next;
    }
    x * scale
}
