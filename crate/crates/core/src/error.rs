//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {deviation:e} > tolerance {tolerance:e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("matrix is not anti-Hermitian (deviation {deviation:e} > tolerance {tolerance:e})")]
    NotAntiHermitian { deviation: f64, tolerance: f64 },

    #[error("trace must be 1 (got {trace}, tolerance {tolerance:e})")]
    TraceNotOne { trace: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("shape mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error(
        "fiber condition violated: ||psi^dag psi - P(sigma)||_F = {deviation:e} > {tolerance:e}"
    )]
    FiberCondition { deviation: f64, tolerance: f64 },

    #[error("element does not commute with P(sigma) (deviation {deviation:e})")]
    NotInGaugeAlgebra { deviation: f64 },

    #[error("density operators are not isospectral: [{left}] vs [{right}]")]
    NotIsospectral { left: String, right: String },

    #[error("operation requires full-rank density operators (support {k} < dimension {n})")]
    RankDeficient { k: usize, n: usize },

    #[error("linear system is ill-conditioned (condition estimate {cond:e} exceeds {limit:e})")]
    IllConditioned { cond: f64, limit: f64 },

    #[error("singular matrix encountered in {0}")]
    Singular(&'static str),

    #[error("integration drift in {quantity}: deviation {deviation:e} exceeds {tolerance:e}; increase the step count")]
    IntegrationDrift {
        quantity: &'static str,
        deviation: f64,
        tolerance: f64,
    },

    #[error("time grids do not align: {0}")]
    GridMismatch(String),

    #[error(
        "initial purification does not project onto the first frame (deviation {deviation:e})"
    )]
    FiberMismatch { deviation: f64 },

    #[error("control direction is not horizontal: parallel part has norm {parallel_norm:e} > {tolerance:e}")]
    NotHorizontal { parallel_norm: f64, tolerance: f64 },

    #[error("supports are not orthogonal: Tr(rho0 rho1) = {overlap:e}")]
    SupportsNotOrthogonal { overlap: f64 },

    #[error("variance is negative beyond tolerance: {0:e}")]
    NegativeVariance(f64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
