use thiserror::Error;

use crate::spec::MagicSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimensions must be in 1..={max}, got {rows}x{cols}")]
    Dimension {
        rows: usize,
        cols: usize,
        max: usize,
    },

    #[error(
        "row sum {row_sum} out of range 0..={cols} or column sum {col_sum} out of range 0..={rows}"
    )]
    SumOutOfRange {
        rows: usize,
        cols: usize,
        row_sum: usize,
        col_sum: usize,
    },

    #[error("no {}x{} matrix has row sum {} and column sum {}; nearest feasible (row sum, column sum) pairs: {}",
        spec.rows(), spec.cols(), spec.row_sum(), spec.col_sum(), fmt_pairs(nearest))]
    Infeasible {
        spec: MagicSpec,
        nearest: Vec<(usize, usize)>,
    },

    #[error("matrix is {found_rows}x{found_cols} but the spec expects {rows}x{cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },

    #[error("base matrix is not a valid square magic matrix: {0}")]
    InvalidBase(String),

    #[error("instance {rows}x{cols} exceeds the enumeration guard of {max}x{max}")]
    SizeGuard {
        rows: usize,
        cols: usize,
        max: usize,
    },

    #[error("row {row} has length {len}, expected {expected}")]
    Ragged {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("entry ({row}, {col}) is {value}, expected 0 or 1")]
    NonBinary { row: usize, col: usize, value: i64 },

    #[error("buffer has {len} entries, expected {expected}")]
    BufferLength { len: usize, expected: usize },

    #[error("generation invariant violated at column {column}: {detail}")]
    Invariant { column: usize, detail: String },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub(crate) fn fmt_pairs(pairs: &[(usize, usize)]) -> String {
    let inner: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!("[{}]", inner.join(", "))
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
