use thiserror::Error;

/// Errors for entropy-bound computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    Empty,

    #[error("non-finite entry at index {index}: {value}")]
    NonFinite { index: usize, value: f64 },

    #[error("negative mass at index {index}: {value}")]
    NegativeMass { index: usize, value: f64 },

    #[error("not normalized (expected sum within {tol} of 1): sum={sum}")]
    NotNormalized { sum: f64, tol: f64 },

    #[error("sigma out of range: {value} (must lie in [{min}, {max}])", min = crate::sigma::SIGMA_MIN, max = crate::sigma::SIGMA_MAX)]
    InvalidSigma { value: f64 },

    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("invalid sigma grid: {0}")]
    InvalidGrid(&'static str),

    #[error("invalid family parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("series diverges: exponent*q = {product} <= 1, the l^sigma criterion fails")]
    Divergent { product: f64 },

    #[error("tail tolerance {requested} unreachable by truncation (achieved {achieved})")]
    TailTolerance { requested: f64, achieved: f64 },

    #[error("matrix is not square: {rows} rows, {cols} columns at row {rows}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |A - A^dagger| = {max_dev}")]
    NotHermitian { max_dev: f64 },

    #[error("trace is not 1: tr = {trace}")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("eigensolver did not converge within the sweep limit")]
    NoConvergence,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
