//! Exhaustive enumeration of small instances.
//!
//! Rows are filled one at a time with every `a`-subset of columns, pruned by
//! the remaining per-column capacity. The oracle never consults the
//! feasibility predicate, so it can be used to check it.

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;
use crate::spec::MagicSpec;

/// Largest row or column count accepted by the enumerator.
pub const MAX_ORACLE_DIM: usize = 6;

/// Default number of matrices retained by [`enumerate`].
pub const DEFAULT_COLLECT_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    /// Exact number of matrices satisfying the spec.
    pub count: u64,
    /// The first `collect_limit` solutions in lexicographic order of packed
    /// rows.
    pub matrices: Vec<BinaryMatrix>,
}

struct Search {
    rows: usize,
    cols: usize,
    row_sum: usize,
    combos: Vec<u8>,
    capacity: Vec<usize>,
    chosen: Vec<u8>,
    count: u64,
    limit: usize,
    stop_at_first: bool,
    aggregate_prune: bool,
    found: Vec<BinaryMatrix>,
}

impl Search {
    fn new(spec: &MagicSpec, limit: usize, stop_at_first: bool) -> Self {
        let cols = spec.cols();
        let combos = (0u32..1 << cols)
            .filter(|mask| mask.count_ones() as usize == spec.row_sum())
            .map(|mask| mask as u8)
            .collect();
        Search {
            rows: spec.rows(),
            cols,
            row_sum: spec.row_sum(),
            combos,
            capacity: vec![spec.col_sum(); cols],
            chosen: Vec::with_capacity(spec.rows()),
            count: 0,
            limit,
            stop_at_first,
            aggregate_prune: true,
            found: Vec::new(),
        }
    }

    /// Returns `true` when the search should stop early.
    fn fill(&mut self, row: usize) -> bool {
        let remaining = self.rows - row;
        // Each remaining row contributes exactly `row_sum` ones.
        if (self.aggregate_prune || remaining == 0)
            && self.capacity.iter().sum::<usize>() != remaining * self.row_sum
        {
            return false;
        }
        if remaining == 0 {
            self.count += 1;
            if self.found.len() < self.limit {
                self.found.push(self.materialize());
            }
            return self.stop_at_first;
        }
        for c in 0..self.combos.len() {
            let mask = self.combos[c];
            let fits = (0..self.cols).all(|j| {
                let cap = self.capacity[j];
                if mask >> j & 1 == 1 {
                    cap > 0 && cap - 1 < remaining
                } else {
                    cap < remaining
                }
            });
            if !fits {
                continue;
            }
            self.apply(mask, false);
            self.chosen.push(mask);
            let stop = self.fill(row + 1);
            self.chosen.pop();
            self.apply(mask, true);
            if stop {
                return true;
            }
        }
        false
    }

    fn apply(&mut self, mask: u8, undo: bool) {
        for j in 0..self.cols {
            if mask >> j & 1 == 1 {
                if undo {
                    self.capacity[j] += 1;
                } else {
                    self.capacity[j] -= 1;
                }
            }
        }
    }

    fn materialize(&self) -> BinaryMatrix {
        let mut m = BinaryMatrix::zeros(self.rows, self.cols);
        for (i, &mask) in self.chosen.iter().enumerate() {
            for j in 0..self.cols {
                if mask >> j & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }
}

fn guard(rows: usize, cols: usize) -> Result<()> {
    if rows > MAX_ORACLE_DIM || cols > MAX_ORACLE_DIM {
        return Err(Error::SizeGuard {
            rows,
            cols,
            max: MAX_ORACLE_DIM,
        });
    }
    Ok(())
}

/// Every matrix satisfying `spec`, counted exactly; at most `collect_limit`
/// are kept.
pub fn enumerate(spec: &MagicSpec, collect_limit: usize) -> Result<EnumerationResult> {
    guard(spec.rows(), spec.cols())?;
    let mut search = Search::new(spec, collect_limit, false);
    search.fill(0);
    Ok(EnumerationResult {
        count: search.count,
        matrices: search.found,
    })
}

pub fn count(spec: &MagicSpec) -> Result<u64> {
    enumerate(spec, 0).map(|r| r.count)
}

/// Whether any matrix satisfies the parameters; stops at the first solution.
///
/// Unlike [`enumerate`] this skips the aggregate "remaining rows times row
/// sum equals remaining capacity" cut, which is the counting identity
/// `a * m == b * n` in disguise. Only per-column capacity limits prune the
/// search, so the answer is independent of the feasibility predicate.
pub fn exists(rows: usize, cols: usize, row_sum: usize, col_sum: usize) -> Result<bool> {
    guard(rows, cols)?;
    let spec = MagicSpec::new(rows, cols, row_sum, col_sum)?;
    let mut search = Search::new(&spec, 0, true);
    search.aggregate_prune = false;
    search.fill(0);
    Ok(search.count > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::validate;

    fn sq(n: usize, k: usize) -> MagicSpec {
        MagicSpec::square(n, k).unwrap()
    }

    #[test]
    fn fixture_counts() {
        assert_eq!(count(&sq(3, 1)).unwrap(), 6);
        assert_eq!(count(&sq(2, 1)).unwrap(), 2);
        assert_eq!(count(&sq(4, 2)).unwrap(), 90);
        assert_eq!(count(&MagicSpec::new(3, 5, 2, 1).unwrap()).unwrap(), 0);
    }

    #[test]
    fn permutation_counts() {
        let mut fact = 1;
        for n in 1..=5u64 {
            fact *= n;
            assert_eq!(count(&sq(n as usize, 1)).unwrap(), fact);
        }
    }

    #[test]
    fn complement_symmetry() {
        for n in 1..=4 {
            for k in 0..=n {
                assert_eq!(count(&sq(n, k)).unwrap(), count(&sq(n, n - k)).unwrap());
            }
        }
    }

    #[test]
    fn matrices_valid_sorted_and_capped() {
        let spec = sq(4, 2);
        let all = enumerate(&spec, DEFAULT_COLLECT_LIMIT).unwrap();
        assert_eq!(all.matrices.len(), 90);
        assert!(all.matrices.windows(2).all(|w| w[0] < w[1]));
        assert!(all
            .matrices
            .iter()
            .all(|m| validate(m, &spec).unwrap().is_valid));

        let few = enumerate(&spec, 5).unwrap();
        assert_eq!(few.count, 90);
        assert_eq!(few.matrices, all.matrices[..5]);
    }

    #[test]
    fn exists_examples() {
        assert!(exists(3, 5, 5, 3).unwrap());
        assert!(!exists(3, 5, 2, 1).unwrap());
        assert!(exists(4, 6, 3, 2).unwrap());
    }

    #[test]
    fn exists_agrees_with_count() {
        for m in 1..=4 {
            for n in 1..=4 {
                for a in 0..=n {
                    for b in 0..=m {
                        let spec = MagicSpec::new(m, n, a, b).unwrap();
                        assert_eq!(exists(m, n, a, b).unwrap(), count(&spec).unwrap() > 0);
                    }
                }
            }
        }
    }

    #[test]
    fn guard_enforced() {
        assert!(matches!(count(&sq(7, 3)), Err(Error::SizeGuard { .. })));
        assert!(matches!(exists(2, 7, 0, 0), Err(Error::SizeGuard { .. })));
    }
}
