use thiserror::Error;

/// Failures reported by the simulator and its solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("degenerate eigenbasis: normalization denominator {denominator:e} for state {index}")]
    DegenerateBasis { index: usize, denominator: f64 },

    /// E^(2) and E^(5) coincide, so the auxiliary spin cannot be read out.
    #[error("degenerate E(2)/E(5) levels: the auxiliary spin is unmeasurable without a Zeeman splitting")]
    Degeneracy,

    #[error("high-field formula requires |beta| >= {min}, got {beta}")]
    Regime { beta: f64, min: f64 },

    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("no root found for branch {n} within t <= {window:e}")]
    NoRoot { n: u32, window: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
