use thiserror::Error;

use crate::metric::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("empty matrix")]
    Empty,

    #[error("non-finite entry at ({i}, {j})")]
    NonFinite { i: usize, j: usize },

    #[error("negative distance {value} at ({i}, {j})")]
    NegativeEntry { i: usize, j: usize, value: f64 },

    #[error("nonzero diagonal entry {value} at index {i}")]
    NonzeroDiagonal { i: usize, value: f64 },

    #[error("asymmetric entries at ({i}, {j}): {upper} vs {lower}")]
    Asymmetric {
        i: usize,
        j: usize,
        upper: f64,
        lower: f64,
    },

    #[error("zero distance between distinct points {i} and {j}")]
    DuplicatePoint { i: usize, j: usize },

    #[error("label count {labels} does not match point count {points}")]
    LabelCount { labels: usize, points: usize },

    #[error("not a metric: {0}")]
    NotMetric(Violation),

    #[error("not an ultrametric: {0}")]
    NotUltrametric(Violation),

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("degenerate labeling: the only coterie has two points and contains the base point")]
    Degenerate,

    #[error("invalid exponent p = {0}")]
    InvalidExponent(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("coefficients sum to {sum}, expected zero")]
    NotMeanZero { sum: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("Gramian is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotUltrametric(_) | Error::Degenerate => 3,
            Error::NoConvergence { .. } | Error::NotPsd { .. } => 4,
            _ => 2,
        }
    }
}
