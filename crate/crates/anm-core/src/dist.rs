//! Seedable sampling from the three distribution families and generation of
//! paired additive-noise-model samples `Y = β·X^e + N`.
//!
//! Samplers draw a *standard* variate first and then apply the affine
//! location/scale transform. That makes the scaling law exact: a noise vector
//! generated at scale `s·i` is bit-for-bit `i` times the vector generated at
//! scale `s` from the same seed (for location 0).

use alloc::vec::Vec;

#[allow(unused_imports)] // resolves float math in no_std builds
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::rng::{self, STREAM_CAUSE, STREAM_NOISE};
use crate::{Error, Result};

/// Distribution family of a scalar variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Normal,
    Uniform,
    Laplace,
}

/// A fully parameterized scalar distribution.
///
/// `scale` is the standard deviation for `Normal`, the half-width for
/// `Uniform` (support is exactly `[location − scale, location + scale]`),
/// and the scale parameter `b` for `Laplace` (variance `2b²`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionSpec {
    pub family: Family,
    pub location: f64,
    pub scale: f64,
}

impl DistributionSpec {
    pub fn normal(location: f64, scale: f64) -> Self {
        Self { family: Family::Normal, location, scale }
    }

    pub fn uniform(location: f64, half_width: f64) -> Self {
        Self { family: Family::Uniform, location, scale: half_width }
    }

    pub fn laplace(location: f64, scale: f64) -> Self {
        Self { family: Family::Laplace, location, scale }
    }

    fn validate(&self) -> Result<()> {
        if !(self.scale > 0.0) || !self.scale.is_finite() {
            return Err(Error::InvalidParameter("distribution scale must be positive and finite"));
        }
        if !self.location.is_finite() {
            return Err(Error::InvalidParameter("distribution location must be finite"));
        }
        Ok(())
    }

    /// Draws one standard variate (location 0, scale 1) of this family.
    fn standard_draw<R: Rng>(family: Family, rng: &mut R) -> f64 {
        match family {
            Family::Normal => StandardNormal.sample(rng),
            Family::Uniform => 2.0 * rng.random::<f64>() - 1.0,
            Family::Laplace => {
                // Inverse CDF; the max() guards the measure-zero p = 0 draw.
                let p: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
                if p < 0.5 {
                    (2.0 * p).ln()
                } else {
                    -(2.0 * (1.0 - p)).ln()
                }
            }
        }
    }

    /// `n` i.i.d. draws, deterministic given `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        self.validate()?;
        if n < 1 {
            return Err(Error::InvalidParameter("sample size must be at least 1"));
        }
        let mut rng = rng::stream(seed);
        Ok((0..n)
            .map(|_| self.location + self.scale * Self::standard_draw(self.family, &mut rng))
            .collect())
    }

    /// Population variance of this distribution.
    pub fn variance(&self) -> f64 {
        match self.family {
            Family::Normal => self.scale * self.scale,
            Family::Uniform => self.scale * self.scale / 3.0,
            Family::Laplace => 2.0 * self.scale * self.scale,
        }
    }
}

/// Exponent of the structural equation: `Y = β·X + N` or `Y = β·X³ + N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    Linear,
    Cubic,
}

impl Exponent {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Exponent::Linear => x,
            Exponent::Cubic => x * x * x,
        }
    }
}

/// Template of a bivariate additive noise model.
///
/// The effective noise distribution is `noise_base` with its scale multiplied
/// by `noise_scale_factor` (the *i* factor); the cause spec is used as-is.
#[derive(Debug, Clone, PartialEq)]
pub struct AnmSpec {
    pub beta: f64,
    pub exponent: Exponent,
    pub cause: DistributionSpec,
    pub noise_base: DistributionSpec,
    pub noise_scale_factor: f64,
}

/// An observed draw of the pair (X, Y): equal-length, all-finite vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl PairedSample {
    /// Wraps two vectors after checking the pairing invariants.
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("paired sample entries must be finite"));
        }
        Ok(Self { x, y })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// The same pair with the roles of x and y exchanged.
    pub fn swapped(&self) -> Self {
        Self { x: self.y.clone(), y: self.x.clone() }
    }
}

impl AnmSpec {
    /// The noise distribution after applying the scale factor.
    pub fn effective_noise(&self) -> DistributionSpec {
        DistributionSpec {
            scale: self.noise_base.scale * self.noise_scale_factor,
            ..self.noise_base
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.beta.is_finite() {
            return Err(Error::InvalidParameter("beta must be finite"));
        }
        if !(self.noise_scale_factor > 0.0) || !self.noise_scale_factor.is_finite() {
            return Err(Error::InvalidParameter("noise scale factor must be positive and finite"));
        }
        self.cause.validate()?;
        self.noise_base.validate()
    }

    /// Generates `n` paired observations.
    ///
    /// The cause and the noise are drawn from independent substreams of
    /// `seed`, so the x vector depends only on (cause spec, n, seed).
    pub fn generate_pair(&self, n: usize, seed: u64) -> Result<PairedSample> {
        self.validate()?;
        if n < 2 {
            return Err(Error::InvalidParameter("paired generation needs n >= 2"));
        }
        let x = self.cause.sample(n, rng::substream(seed, STREAM_CAUSE))?;
        let noise = self.effective_noise().sample(n, rng::substream(seed, STREAM_NOISE))?;
        let y = x
            .iter()
            .zip(&noise)
            .map(|(&xv, &nv)| self.beta * self.exponent.apply(xv) + nv)
            .collect();
        PairedSample::new(x, y)
    }
}
