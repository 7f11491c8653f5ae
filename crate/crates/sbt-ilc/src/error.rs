//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("trial length must be at least 1")]
    EmptyHorizon,

    #[error("denominator leading coefficient must be nonzero")]
    IllPosedDenominator,

    #[error("numerator is identically zero")]
    ZeroNumerator,

    #[error("plant is unstable: pole at {re}{im:+}i has modulus {modulus}")]
    UnstablePlant { re: f64, im: f64, modulus: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("trial length {n} too small for band half-width {r}")]
    HorizonTooSmall { n: usize, r: usize },

    #[error("zero-phase filter violates unit DC gain: q0 + 2*sum(qi) = {dc}")]
    NotUnitDcGain { dc: f64 },

    #[error("matrix is not symmetric: |a({i},{j}) - a({j},{i})| = {delta}")]
    NotSymmetric { i: usize, j: usize, delta: f64 },

    #[error("eigenvalue iteration did not converge within {limit} sweeps")]
    EigenNoConvergence { limit: usize },

    #[error("complex root {re}{im:+}i has no conjugate partner")]
    UnpairedComplexRoot { re: f64, im: f64 },

    #[error("normal equations are singular (zero band)")]
    SingularNormalEquations,

    #[error("minimum-phase factor is not causally invertible (leading numerator coefficient is zero)")]
    NotCausallyInvertible,

    #[error("closed-form band disagrees with dense product at lag {lag}: {closed_form} vs {dense}")]
    BandCrossCheck {
        lag: usize,
        closed_form: f64,
        dense: f64,
    },

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
