//! Deterministic witnesses: the circulant square and its tiling into any
//! feasible rectangle.

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;
use crate::spec::{decompose, MagicSpec, MAX_DIM};
use crate::validate::detect;

/// `n x n` matrix with a wrap-around run of `k` ones starting on the diagonal.
///
/// Entry `(i, j)` is one iff `i <= j < i + k` or `i <= j + n < i + k`.
pub fn circulant(n: usize, k: usize) -> Result<BinaryMatrix> {
    MagicSpec::square(n, k)?;
    let mut m = BinaryMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if circulant_entry(n, k, i, j) {
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

#[inline]
pub fn circulant_entry(n: usize, k: usize, i: usize, j: usize) -> bool {
    (i <= j && j < i + k) || (i <= j + n && j + n < i + k)
}

/// Repeats a square magic `base` `vertical` times down and `horizontal` times
/// across. A `q x q` base with sums `q'` yields row sums `horizontal * q'` and
/// column sums `vertical * q'`.
pub fn tile(base: &BinaryMatrix, vertical: usize, horizontal: usize) -> Result<BinaryMatrix> {
    let q = base.rows();
    if q != base.cols() {
        return Err(Error::InvalidBase(format!(
            "{}x{} is not square",
            q,
            base.cols()
        )));
    }
    let d = detect(base);
    match (d.row_sum, d.col_sum) {
        (Some(a), Some(b)) if a == b => {}
        _ => {
            return Err(Error::InvalidBase(format!(
                "{:?}",
                d.report.first_violation
            )))
        }
    }
    let rows = q * vertical;
    let cols = q * horizontal;
    if rows == 0 || cols == 0 || rows > MAX_DIM || cols > MAX_DIM {
        return Err(Error::Dimension {
            rows,
            cols,
            max: MAX_DIM,
        });
    }
    let mut out = BinaryMatrix::zeros(rows, cols);
    for (i, j) in base.ones_positions() {
        for vi in 0..vertical {
            for hj in 0..horizontal {
                out.set(vi * q + i, hj * q + j, true);
            }
        }
    }
    Ok(out)
}

/// Canonical witness for a feasible spec: `circulant(q, q')` tiled `m' x n'`.
pub fn deterministic_rect(spec: &MagicSpec) -> Result<BinaryMatrix> {
    let d = decompose(spec.rows(), spec.cols(), spec.row_sum(), spec.col_sum())?;
    let qp = d.q_prime.expect("decompose sets q' on success");
    tile(&circulant(d.q, qp)?, d.m_prime, d.n_prime)
}
