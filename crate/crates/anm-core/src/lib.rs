//! Bivariate additive-noise-model (ANM) toolkit.
//!
//! Everything needed to decide the causal direction of a pair (X, Y) generated
//! by `Y = β·f(X) + N` with noise independent of the cause:
//!
//! * [`dist`] — seedable samplers for the Normal/Uniform/Laplace families and
//!   paired ANM sample generation with a scalable noise level,
//! * [`regression`] — least-squares fitting, residuals, train/test splitting,
//!   and conditional residual variance,
//! * [`indep`] — dependence measures (HSIC and low-rank variants, distance
//!   covariance/correlation, Hoeffding's Phi) plus the HSIC gamma test,
//! * [`entropy`] — differential-entropy estimators (kNN, maximum-entropy
//!   approximations, Vasicek spacing),
//! * [`resit`] — regression-with-subsequent-independence-test direction
//!   decisions (Peters et al., 2014), scored by any estimator,
//! * [`park`] — ordering-based identification via conditional variances and
//!   Fisher-z conditional-independence tests (Park, 2020).
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only switches float math to the platform intrinsics and implements
//! `std::error::Error`. All operations are pure functions of their inputs and
//! an explicit 64-bit seed, so results are reproducible bit-for-bit across
//! runs and thread layouts.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod dist;
pub mod entropy;
mod error;
pub mod estimator;
pub mod indep;
pub mod park;
pub mod regression;
pub mod resit;
pub mod rng;
pub mod special;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
