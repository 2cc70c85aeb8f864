//! Randomized column-by-column generation.
//!
//! The matrix is filled one column at a time. Before column `t` every row
//! sum `s_i` lies in `[a + t - n, a]`. Rows at the lower bound must receive a
//! one now or they can never reach `a`; rows at `a` must not; the remaining
//! rows are sampled uniformly to bring the column up to exactly `b` ones.
//! The square case is the same procedure with `m = n` and `a = b = k`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;
use crate::rng::{derive_seed, partial_shuffle, RngStream};
use crate::spec::MagicSpec;

/// Whether per-column invariant checks run during generation.
///
/// `On` checks the running row-sum window and the partition size bounds at
/// every column and validates the finished matrix; that is O(m) extra work
/// per column. The default follows `debug_assertions`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Instrumentation {
    Off,
    On,
}

impl Default for Instrumentation {
    fn default() -> Self {
        if cfg!(debug_assertions) {
            Instrumentation::On
        } else {
            Instrumentation::Off
        }
    }
}

/// Running state of one generation: the next column `t` and the row sums
/// written so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenState {
    spec: MagicSpec,
    t: usize,
    sums: Vec<u32>,
}

impl GenState {
    pub fn new(spec: MagicSpec) -> Self {
        GenState {
            spec,
            t: 0,
            sums: vec![0; spec.rows()],
        }
    }

    /// State at column `t` with the given row sums, e.g. to replay a step in
    /// isolation. Only the lengths are checked here.
    pub fn from_parts(spec: MagicSpec, t: usize, sums: Vec<u32>) -> Result<Self> {
        if sums.len() != spec.rows() || t > spec.cols() {
            return Err(Error::Invariant {
                column: t,
                detail: format!(
                    "state has {} row sums at column {t}, spec is {}x{}",
                    sums.len(),
                    spec.rows(),
                    spec.cols()
                ),
            });
        }
        Ok(GenState { spec, t, sums })
    }

    pub fn spec(&self) -> &MagicSpec {
        &self.spec
    }

    /// Index of the next column to fill; equals `cols` when finished.
    pub fn column(&self) -> usize {
        self.t
    }

    pub fn row_sums(&self) -> &[u32] {
        &self.sums
    }

    pub fn is_done(&self) -> bool {
        self.t == self.spec.cols()
    }

    /// `a + t - n`: the smallest row sum that can still reach `a`.
    #[inline]
    fn lower(&self) -> i64 {
        self.spec.row_sum() as i64 + self.t as i64 - self.spec.cols() as i64
    }

    /// First row whose sum leaves `[a + t - n, a]`, if any.
    pub fn window_violation(&self) -> Option<(usize, u32)> {
        let lo = self.lower();
        let hi = self.spec.row_sum() as i64;
        self.sums
            .iter()
            .position(|&s| (s as i64) < lo || (s as i64) > hi)
            .map(|i| (i, self.sums[i]))
    }
}

/// Rows split by their running sum: `forced` at the lower bound `a + t - n`,
/// `open` strictly inside, `full` at `a`. Each set is ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partition {
    pub forced: Vec<usize>,
    pub open: Vec<usize>,
    pub full: Vec<usize>,
}

pub fn partition_rows(state: &GenState) -> Partition {
    let mut p = Partition::default();
    partition_rows_into(state, &mut p);
    p
}

/// Like [`partition_rows`] but reuses the buffers in `out`.
pub fn partition_rows_into(state: &GenState, out: &mut Partition) {
    out.forced.clear();
    out.open.clear();
    out.full.clear();
    let lo = state.lower();
    let hi = state.spec.row_sum() as i64;
    debug_assert!(
        state.window_violation().is_none(),
        "row sums outside [{lo}, {hi}] at column {}",
        state.t
    );
    for (i, &s) in state.sums.iter().enumerate() {
        let s = s as i64;
        if s <= lo {
            out.forced.push(i);
        } else if s >= hi {
            out.full.push(i);
        } else {
            out.open.push(i);
        }
    }
}

/// Uniform `count`-subset of `pool` by partial Fisher-Yates, returned in
/// ascending order.
pub fn random_subset(pool: &[usize], count: usize, rng: &mut RngStream) -> Result<Vec<usize>> {
    if count > pool.len() {
        return Err(Error::Invariant {
            column: 0,
            detail: format!("cannot pick {count} rows from a pool of {}", pool.len()),
        });
    }
    let mut work = pool.to_vec();
    partial_shuffle(&mut work, count, rng);
    work.truncate(count);
    work.sort_unstable();
    Ok(work)
}

/// Sizes observed while filling one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub column: usize,
    pub forced: usize,
    pub open: usize,
    pub full: usize,
    pub selected: usize,
}

/// Fills column `state.column()`: every forced row plus a random subset of
/// the open rows, `b` rows in total. Advances the state by one column.
///
/// Returns [`Error::Invariant`] if the selection cannot be made (more than `b`
/// forced rows, or too few open rows), which only happens when the state did
/// not come from a feasible spec. With `Instrumentation::On` the row-sum
/// window and partition bounds are also checked before and after the step.
pub fn step_column(
    state: &mut GenState,
    matrix: &mut BinaryMatrix,
    rng: &mut RngStream,
    scratch: &mut Partition,
    checks: Instrumentation,
) -> Result<StepRecord> {
    if matrix.rows() != state.spec.rows() || matrix.cols() != state.spec.cols() {
        return Err(invariant(state.t, "matrix shape differs from spec".into()));
    }
    step_into(state, ColumnSink::Matrix(matrix), rng, scratch, checks)
}

/// Where the ones of a column go: straight into the matrix, or into one
/// accumulator word per row covering the current block of 64 columns.
enum ColumnSink<'a> {
    Matrix(&'a mut BinaryMatrix),
    Block(&'a mut [u64]),
}

fn step_into(
    state: &mut GenState,
    mut sink: ColumnSink<'_>,
    rng: &mut RngStream,
    scratch: &mut Partition,
    checks: Instrumentation,
) -> Result<StepRecord> {
    let spec = state.spec;
    let t = state.t;
    if t >= spec.cols() {
        return Err(invariant(t, "no columns left to fill".into()));
    }
    let instrumented = checks == Instrumentation::On;
    if instrumented {
        if let Some((i, s)) = state.window_violation() {
            return Err(invariant(
                t,
                format!(
                    "row {i} has sum {s} outside [{}, {}]",
                    state.lower(),
                    spec.row_sum()
                ),
            ));
        }
    }

    partition_rows_into(state, scratch);
    let b = spec.col_sum();
    let m = spec.rows();
    let record = StepRecord {
        column: t,
        forced: scratch.forced.len(),
        open: scratch.open.len(),
        full: scratch.full.len(),
        selected: b,
    };
    if instrumented && !partition_bounds_hold(&record, b, m) {
        return Err(invariant(
            t,
            format!(
                "partition bounds broken: {} forced, {} open, {} full for column sum {b} of {m} rows",
                record.forced, record.open, record.full
            ),
        ));
    }
    if record.forced > b {
        return Err(invariant(
            t,
            format!("{} forced rows exceed column sum {b}", record.forced),
        ));
    }
    let extra = b - record.forced;
    if extra > record.open {
        return Err(invariant(
            t,
            format!("cannot pick {extra} rows from {} open rows", record.open),
        ));
    }

    partial_shuffle(&mut scratch.open, extra, rng);
    let word = t / 64;
    let mask = 1u64 << (t % 64);
    let selected = scratch.forced.iter().chain(&scratch.open[..extra]);
    match &mut sink {
        ColumnSink::Matrix(matrix) => {
            for &i in selected {
                matrix.row_words_mut(i)[word] |= mask;
                state.sums[i] += 1;
            }
        }
        ColumnSink::Block(block) => {
            for &i in selected {
                block[i] |= mask;
                state.sums[i] += 1;
            }
        }
    }
    state.t += 1;

    if instrumented {
        let written = match &sink {
            ColumnSink::Matrix(matrix) => matrix.col_sum(t),
            ColumnSink::Block(block) => block.iter().filter(|&&w| w & mask != 0).count() as u64,
        };
        if written != b as u64 {
            return Err(invariant(
                t,
                format!("column has {written} ones, expected {b}"),
            ));
        }
        if let Some((i, s)) = state.window_violation() {
            return Err(invariant(
                t,
                format!(
                    "after step row {i} has sum {s} outside [{}, {}]",
                    state.lower(),
                    spec.row_sum()
                ),
            ));
        }
    }
    Ok(record)
}

/// Size bounds on a partition taken from a valid run: `|forced| <= b` and
/// `|full| <= m - b`, both strict whenever some row is open. With no open
/// rows the counting argument gives `|forced| == b` exactly.
pub fn partition_bounds_hold(record: &StepRecord, col_sum: usize, rows: usize) -> bool {
    let free = rows - col_sum;
    if record.open == 0 {
        record.forced == col_sum && record.full == free
    } else {
        record.forced < col_sum && record.full < free
    }
}

fn invariant(column: usize, detail: String) -> Error {
    Error::Invariant { column, detail }
}

/// Step-by-step driver owning the state, matrix and random stream of one
/// generation.
#[derive(Debug, Clone)]
pub struct Generator {
    state: GenState,
    matrix: BinaryMatrix,
    rng: RngStream,
    scratch: Partition,
    checks: Instrumentation,
}

impl Generator {
    pub fn new(spec: MagicSpec, seed: u64) -> Result<Self> {
        let spec = spec.require_feasible()?;
        Ok(Generator {
            state: GenState::new(spec),
            matrix: BinaryMatrix::zeros(spec.rows(), spec.cols()),
            rng: RngStream::new(seed),
            scratch: Partition::default(),
            checks: Instrumentation::default(),
        })
    }

    pub fn instrumentation(mut self, checks: Instrumentation) -> Self {
        self.checks = checks;
        self
    }

    pub fn state(&self) -> &GenState {
        &self.state
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.matrix
    }

    pub fn is_done(&self) -> bool {
        self.state.is_done()
    }

    pub fn step(&mut self) -> Result<StepRecord> {
        step_column(
            &mut self.state,
            &mut self.matrix,
            &mut self.rng,
            &mut self.scratch,
            self.checks,
        )
    }

    /// Runs the remaining columns and returns the finished matrix.
    ///
    /// Columns are collected 64 at a time in a per-row word buffer and then
    /// written to the matrix, so the matrix is touched once per row per block
    /// instead of once per one-entry.
    pub fn finish(mut self) -> Result<BinaryMatrix> {
        let cols = self.state.spec.cols();
        let mut block = vec![0u64; self.state.spec.rows()];
        while !self.state.is_done() {
            let t = self.state.t;
            if !t.is_multiple_of(64) {
                // Resume mid-block after manual steps: seed the buffer.
                for (i, w) in block.iter_mut().enumerate() {
                    *w = self.matrix.row_words(i)[t / 64];
                }
            }
            let block_end = ((t / 64 + 1) * 64).min(cols);
            while self.state.t < block_end {
                step_into(
                    &mut self.state,
                    ColumnSink::Block(&mut block),
                    &mut self.rng,
                    &mut self.scratch,
                    self.checks,
                )?;
            }
            for (i, w) in block.iter_mut().enumerate() {
                self.matrix.row_words_mut(i)[t / 64] = std::mem::take(w);
            }
        }
        if self.checks == Instrumentation::On {
            let spec = self.state.spec;
            let report = crate::validate::validate(&self.matrix, &spec)?;
            if let Some(v) = report.first_violation {
                return Err(invariant(
                    spec.cols(),
                    format!("finished matrix invalid: {v:?}"),
                ));
            }
        }
        Ok(self.matrix)
    }
}

/// Random matrix satisfying `spec`, a pure function of `(spec, seed)`.
pub fn generate(spec: &MagicSpec, seed: u64) -> Result<BinaryMatrix> {
    generate_with(spec, seed, Instrumentation::default())
}

pub fn generate_with(spec: &MagicSpec, seed: u64, checks: Instrumentation) -> Result<BinaryMatrix> {
    Generator::new(*spec, seed)?
        .instrumentation(checks)
        .finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchConfig {
    pub count: usize,
    pub master_seed: u64,
    /// Worker threads; 0 picks the global pool.
    pub workers: usize,
}

/// `config.count` matrices, the `i`-th generated from
/// `derive_seed(master_seed, i)`. The output does not depend on `workers`.
pub fn generate_batch(spec: &MagicSpec, config: &BatchConfig) -> Result<Vec<BinaryMatrix>> {
    generate_batch_with(spec, config, Instrumentation::default())
}

pub fn generate_batch_with(
    spec: &MagicSpec,
    config: &BatchConfig,
    checks: Instrumentation,
) -> Result<Vec<BinaryMatrix>> {
    let spec = spec.require_feasible()?;
    let job = |i: usize| generate_with(&spec, derive_seed(config.master_seed, i as u64), checks);
    match config.workers {
        1 => (0..config.count).map(job).collect(),
        0 => (0..config.count).into_par_iter().map(job).collect(),
        w => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| invariant(0, format!("thread pool: {e}")))?;
            pool.install(|| (0..config.count).into_par_iter().map(job).collect())
        }
    }
}
