use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;
use crate::spec::MagicSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Row,
    Column,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axis: Axis,
    pub index: usize,
    pub observed: u64,
    pub expected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub is_valid: bool,
    pub row_sums: Vec<u64>,
    pub col_sums: Vec<u64>,
    /// First mismatch, scanning rows before columns.
    pub first_violation: Option<Violation>,
}

/// Checks every row sum against `spec.row_sum()` and every column sum against
/// `spec.col_sum()`. Sums are reported in full even when the matrix is
/// invalid.
pub fn validate(matrix: &BinaryMatrix, spec: &MagicSpec) -> Result<ValidationReport> {
    if matrix.rows() != spec.rows() || matrix.cols() != spec.cols() {
        return Err(Error::ShapeMismatch {
            rows: spec.rows(),
            cols: spec.cols(),
            found_rows: matrix.rows(),
            found_cols: matrix.cols(),
        });
    }
    let row_sums = matrix.row_sums();
    let col_sums = matrix.col_sums();
    let first_violation = first_mismatch(&row_sums, spec.row_sum() as u64, Axis::Row)
        .or_else(|| first_mismatch(&col_sums, spec.col_sum() as u64, Axis::Column));
    Ok(ValidationReport {
        is_valid: first_violation.is_none(),
        row_sums,
        col_sums,
        first_violation,
    })
}

fn first_mismatch(sums: &[u64], expected: u64, axis: Axis) -> Option<Violation> {
    sums.iter()
        .position(|&s| s != expected)
        .map(|index| Violation {
            axis,
            index,
            observed: sums[index],
            expected,
        })
}

/// Result of checking a matrix without a prescribed spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Detected {
    pub row_sum: Option<u64>,
    pub col_sum: Option<u64>,
    pub report: ValidationReport,
}

impl Detected {
    pub fn is_valid(&self) -> bool {
        self.report.is_valid
    }
}

/// Infers the row and column constants from row 0 and column 0 and validates
/// the whole matrix against them. `row_sum`/`col_sum` are `Some` only when
/// every row (resp. column) agrees.
pub fn detect(matrix: &BinaryMatrix) -> Detected {
    let row_sums = matrix.row_sums();
    let col_sums = matrix.col_sums();
    let a = row_sums.first().copied().unwrap_or(0);
    let b = col_sums.first().copied().unwrap_or(0);
    let first_violation = first_mismatch(&row_sums, a, Axis::Row)
        .or_else(|| first_mismatch(&col_sums, b, Axis::Column));
    let rows_uniform = row_sums.iter().all(|&s| s == a);
    let cols_uniform = col_sums.iter().all(|&s| s == b);
    Detected {
        row_sum: rows_uniform.then_some(a),
        col_sum: cols_uniform.then_some(b),
        report: ValidationReport {
            is_valid: first_violation.is_none(),
            row_sums,
            col_sums,
            first_violation,
        },
    }
}
