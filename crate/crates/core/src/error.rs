//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors produced by matrix construction, kernels, executors, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: left operand is {left_rows}x{left_cols}, right operand is {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("entry ({row}, {col}) lies outside a {nrows}x{ncols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        nrows: usize,
        ncols: usize,
    },

    #[error("triples must be normalized (column-major order, unique coordinates) for this operation")]
    NotNormalized,

    #[error("malformed matrix structure: {0}")]
    Malformed(String),

    #[error("operand grids differ: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    GridMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("{rows}x{cols} grid is not square")]
    NonSquareGrid { rows: usize, cols: usize },

    #[error("permutation is not a bijection on [0, {n})")]
    InvalidPermutation { n: usize },

    #[error("dense oracle limited to dimension {cap}, got {dim}")]
    OracleTooLarge { dim: usize, cap: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
