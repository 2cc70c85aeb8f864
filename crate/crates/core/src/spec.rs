//! Problem parameters and feasibility analysis.
//!
//! An `m x n` binary matrix with every row summing to `a` and every column
//! summing to `b` exists iff `a * m == b * n` (both sides count the ones).
//! Equivalently, writing `q = gcd(m, n)`, `m = q m'` and `n = q n'`, the
//! feasible `(a, b)` are exactly `(q' n', q' m')` for `q'` in `0..=q`.
//! [`is_feasible`] uses the product identity, [`decompose`] the gcd form; the
//! test suite checks the two agree with each other and with brute force.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted row or column count. Keeps `a * m` well inside `u64`.
pub const MAX_DIM: usize = 1 << 20;

/// Parameters `(m, n, a, b)` of a magic matrix: `m` rows each summing to `a`,
/// `n` columns each summing to `b`.
///
/// Construction checks dimensions and sum ranges only. A spec may still be
/// infeasible; see [`MagicSpec::is_feasible`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MagicSpec {
    rows: usize,
    cols: usize,
    row_sum: usize,
    col_sum: usize,
}

impl MagicSpec {
    pub fn new(rows: usize, cols: usize, row_sum: usize, col_sum: usize) -> Result<Self> {
        check_dims(rows, cols)?;
        if row_sum > cols || col_sum > rows {
            return Err(Error::SumOutOfRange {
                rows,
                cols,
                row_sum,
                col_sum,
            });
        }
        Ok(MagicSpec {
            rows,
            cols,
            row_sum,
            col_sum,
        })
    }

    /// Square `n x n` spec with every row and column summing to `k`.
    pub fn square(n: usize, k: usize) -> Result<Self> {
        Self::new(n, n, k, k)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row_sum(&self) -> usize {
        self.row_sum
    }

    #[inline]
    pub fn col_sum(&self) -> usize {
        self.col_sum
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_feasible(&self) -> bool {
        (self.row_sum as u64) * (self.rows as u64) == (self.col_sum as u64) * (self.cols as u64)
    }

    /// Returns `self` if feasible, otherwise an [`Error::Infeasible`] listing
    /// the nearest feasible pairs for the same shape.
    pub fn require_feasible(self) -> Result<Self> {
        if self.is_feasible() {
            Ok(self)
        } else {
            Err(Error::Infeasible {
                spec: self,
                nearest: nearest_pairs(&self, 4),
            })
        }
    }

    /// Spec satisfied by the complement of a matrix satisfying `self`.
    pub fn complement(&self) -> Self {
        MagicSpec {
            rows: self.rows,
            cols: self.cols,
            row_sum: self.cols - self.row_sum,
            col_sum: self.rows - self.col_sum,
        }
    }

    /// Spec satisfied by the transpose of a matrix satisfying `self`.
    pub fn transpose(&self) -> Self {
        MagicSpec {
            rows: self.cols,
            cols: self.rows,
            row_sum: self.col_sum,
            col_sum: self.row_sum,
        }
    }
}

/// `gcd(rows, cols) = q` with the cofactors `m' = rows / q`, `n' = cols / q`
/// and, for a feasible `(a, b)`, the multiplier `q'` with `a = q' n'`,
/// `b = q' m'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GcdDecomposition {
    pub q: usize,
    pub m_prime: usize,
    pub n_prime: usize,
    pub q_prime: Option<usize>,
}

impl GcdDecomposition {
    pub fn of_shape(rows: usize, cols: usize) -> Self {
        let q = gcd(rows, cols);
        GcdDecomposition {
            q,
            m_prime: rows / q,
            n_prime: cols / q,
            q_prime: None,
        }
    }
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 || rows > MAX_DIM || cols > MAX_DIM {
        return Err(Error::Dimension {
            rows,
            cols,
            max: MAX_DIM,
        });
    }
    Ok(())
}

/// Whether an `rows x cols` 0/1 matrix with row sums `row_sum` and column sums
/// `col_sum` exists. Out-of-range arguments are an error, not `false`.
pub fn is_feasible(rows: usize, cols: usize, row_sum: usize, col_sum: usize) -> Result<bool> {
    MagicSpec::new(rows, cols, row_sum, col_sum).map(|s| s.is_feasible())
}

/// All feasible `(row_sum, col_sum)` pairs for the shape, ascending in `q'`.
/// The list always has `gcd(rows, cols) + 1` entries.
pub fn feasible_pairs(rows: usize, cols: usize) -> Result<Vec<(usize, usize)>> {
    check_dims(rows, cols)?;
    let d = GcdDecomposition::of_shape(rows, cols);
    Ok((0..=d.q)
        .map(|qp| (qp * d.n_prime, qp * d.m_prime))
        .collect())
}

/// Factors a feasible parameter set through `gcd(rows, cols)`.
///
/// This works directly on the gcd form (divisibility of `a` by `n'` and of
/// `b` by `m'` with equal quotients), independently of the product test in
/// [`is_feasible`].
pub fn decompose(
    rows: usize,
    cols: usize,
    row_sum: usize,
    col_sum: usize,
) -> Result<GcdDecomposition> {
    let spec = MagicSpec::new(rows, cols, row_sum, col_sum)?;
    let mut d = GcdDecomposition::of_shape(rows, cols);
    if row_sum.is_multiple_of(d.n_prime) && col_sum.is_multiple_of(d.m_prime) {
        let qp = row_sum / d.n_prime;
        if qp == col_sum / d.m_prime {
            d.q_prime = Some(qp);
            return Ok(d);
        }
    }
    Err(Error::Infeasible {
        spec,
        nearest: nearest_pairs(&spec, 4),
    })
}

/// Up to `limit` feasible pairs closest to the requested `(a, b)`, ordered by
/// ascending row sum.
pub fn nearest_pairs(spec: &MagicSpec, limit: usize) -> Vec<(usize, usize)> {
    let d = GcdDecomposition::of_shape(spec.rows, spec.cols);
    let dist = |qp: usize| {
        (qp * d.n_prime).abs_diff(spec.row_sum) + (qp * d.m_prime).abs_diff(spec.col_sum)
    };
    // Distance is convex in q', so the nearest pairs form a contiguous window.
    let best = (0..=d.q).min_by_key(|&qp| dist(qp)).unwrap_or(0);
    let (mut lo, mut hi) = (best, best);
    while hi - lo + 1 < limit && (lo > 0 || hi < d.q) {
        let take_lo = lo > 0 && (hi == d.q || dist(lo - 1) <= dist(hi + 1));
        if take_lo {
            lo -= 1;
        } else {
            hi += 1;
        }
    }
    (lo..=hi)
        .map(|qp| (qp * d.n_prime, qp * d.m_prime))
        .collect()
}
