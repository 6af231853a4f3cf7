use core::fmt;

/// Errors shared by every module in the crate.
///
/// The taxonomy is deliberately small: bad configuration, inputs that are
/// degenerate for a given estimator (constant vectors), designs that cannot
/// be fitted (singular), and shape mismatches between paired vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter is outside its documented domain (non-positive scale,
    /// split fraction outside (0,1), too few samples, ...).
    InvalidParameter(&'static str),
    /// The data itself makes the requested computation meaningless,
    /// e.g. a constant vector fed to a bandwidth-based or entropy estimator.
    DegenerateInput(&'static str),
    /// The regression design matrix is singular (constant mapped predictor
    /// or collinear predictors).
    DegenerateFit(&'static str),
    /// Two vectors that must be paired have different lengths.
    LengthMismatch { left: usize, right: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::DegenerateInput(msg) => write!(f, "degenerate input: {msg}"),
            Error::DegenerateFit(msg) => write!(f, "degenerate fit: {msg}"),
            Error::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
