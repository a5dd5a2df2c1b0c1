use std::io;

use thiserror::Error;

use crate::ultrametric::UltrametricReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix data has {got} entries, expected {expected} for a {n}x{n} matrix")]
    BadShape {
        n: usize,
        got: usize,
        expected: usize,
    },

    #[error("invalid dissimilarity {value} at ({row}, {col}): entries must be nonnegative numbers or +inf")]
    InvalidEntry { row: usize, col: usize, value: f64 },

    #[error("dioid powers did not stabilize: A^(n-1) != A^n at ({row}, {col}) for n = {n}")]
    Stabilization { n: usize, row: usize, col: usize },

    #[error("{0}")]
    Network(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("uses table column '{sector}' sums to zero; the normalization is undefined")]
    ZeroColumn { sector: String },

    #[error("invalid method parameter: {0}")]
    Parameter(String),

    #[error("{message}\n{grammar}")]
    MethodSpec {
        message: String,
        grammar: &'static str,
    },

    #[error("method requires a symmetric network; A({row},{col}) != A({col},{row}). Use an asymmetric method such as reciprocal or nonreciprocal")]
    Asymmetric { row: String, col: String },

    #[error("matrix is not an ultrametric:\n{0}")]
    NotUltrametric(Box<UltrametricReport>),

    #[error("invalid dendrogram: {0}")]
    Dendrogram(String),

    #[error("oracle refuses networks with {n} nodes (limit {limit})")]
    OracleTooLarge { n: usize, limit: usize },

    #[error("unknown node '{0}'")]
    UnknownNode(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
