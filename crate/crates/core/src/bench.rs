//! Timing harness: per-size median generation time, a log-log scaling
//! exponent, and batch throughput across worker counts.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{generate_batch_with, generate_with, BatchConfig, Instrumentation};
use crate::spec::MagicSpec;

pub const CSV_HEADER: &str = "n,k,median_seconds,matrices_per_second";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingEntry {
    pub n: usize,
    pub k: usize,
    pub median_seconds: f64,
    pub throughput: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    /// Ascending by `n`.
    pub entries: Vec<ScalingEntry>,
    /// Least-squares slope of `ln(time)` against `ln(n)`; absent with fewer
    /// than two distinct sizes.
    pub exponent: Option<f64>,
}

impl ScalingReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{},{},{:.9},{:.3}",
                e.n, e.k, e.median_seconds, e.throughput
            );
        }
        out
    }
}

/// `k` for size `n` under a fractional policy, e.g. 0.5 for `floor(n / 2)`.
pub fn k_for(n: usize, k_fraction: f64) -> usize {
    ((n as f64 * k_fraction).floor() as usize).min(n)
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2.0
    }
}

/// Slope of the least-squares line through `(ln n, ln t)`.
pub fn fit_exponent(points: &[(usize, f64)]) -> Option<f64> {
    let first = points.first()?.0;
    if points.iter().all(|p| p.0 == first) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, t)| ((n as f64).ln(), t.max(f64::MIN_POSITIVE).ln()))
        .collect();
    let len = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some(sxy / sxx)
}

/// Median wall time of square generation at each size, one discarded
/// warm-up run first. Runs uninstrumented.
pub fn measure_scaling(sizes: &[usize], k_fraction: f64, reps: usize) -> Result<ScalingReport> {
    let reps = reps.max(1);
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    let mut entries = Vec::with_capacity(sorted.len());
    for &n in &sorted {
        let k = k_for(n, k_fraction);
        let spec = MagicSpec::square(n, k)?;
        std::hint::black_box(generate_with(&spec, u64::MAX, Instrumentation::Off)?);
        let mut times = Vec::with_capacity(reps);
        for rep in 0..reps {
            let start = Instant::now();
            let m = generate_with(&spec, rep as u64, Instrumentation::Off)?;
            times.push(start.elapsed().as_secs_f64());
            std::hint::black_box(m);
        }
        let med = median(&mut times);
        entries.push(ScalingEntry {
            n,
            k,
            median_seconds: med,
            throughput: 1.0 / med.max(f64::MIN_POSITIVE),
        });
    }
    let points: Vec<(usize, f64)> = entries.iter().map(|e| (e.n, e.median_seconds)).collect();
    Ok(ScalingReport {
        exponent: fit_exponent(&points),
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatchThroughput {
    pub workers: usize,
    pub matrices_per_second: f64,
}

/// Batch throughput for each worker count. Outputs are first checked to be
/// identical across all worker counts.
pub fn measure_batch_speedup(
    spec: &MagicSpec,
    count: usize,
    workers: &[usize],
) -> Result<Vec<BatchThroughput>> {
    let config = |w| BatchConfig {
        count,
        master_seed: 0x5eed,
        workers: w,
    };
    let mut reference = None;
    for &w in workers {
        let out = generate_batch_with(spec, &config(w), Instrumentation::Off)?;
        match &reference {
            None => reference = Some(out),
            Some(r) if *r != out => {
                return Err(Error::Invariant {
                    column: 0,
                    detail: format!("batch output with {w} workers differs from {}", workers[0]),
                })
            }
            Some(_) => {}
        }
    }
    workers
        .iter()
        .map(|&w| {
            let start = Instant::now();
            let out = generate_batch_with(spec, &config(w), Instrumentation::Off)?;
            let secs = start.elapsed().as_secs_f64();
            std::hint::black_box(out);
            Ok(BatchThroughput {
                workers: w,
                matrices_per_second: count as f64 / secs.max(f64::MIN_POSITIVE),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_of_exact_power_law() {
        let pts: Vec<(usize, f64)> = [10, 20, 40, 80]
            .iter()
            .map(|&n| (n, 3e-9 * (n as f64).powi(2)))
            .collect();
        assert!((fit_exponent(&pts).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn exponent_absent_without_spread() {
        assert_eq!(fit_exponent(&[(100, 1.0)]), None);
        assert_eq!(fit_exponent(&[(100, 1.0), (100, 2.0)]), None);
        assert_eq!(fit_exponent(&[]), None);
    }

    #[test]
    fn single_size_report() {
        let r = measure_scaling(&[50], 0.5, 5).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].k, 25);
        assert!(r.exponent.is_none());
        let csv = r.to_csv();
        assert!(csv.starts_with("n,k,median_seconds,matrices_per_second\n50,25,"));
    }

    #[test]
    fn entries_sorted() {
        let r = measure_scaling(&[40, 10, 20], 0.0, 1).unwrap();
        let ns: Vec<_> = r.entries.iter().map(|e| e.n).collect();
        assert_eq!(ns, vec![10, 20, 40]);
        assert!(r.entries.iter().all(|e| e.k == 0));
        assert!(r.exponent.is_some());
    }

    #[test]
    fn medians() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn batch_rows_per_worker_count() {
        let spec = MagicSpec::square(16, 8).unwrap();
        let rows = measure_batch_speedup(&spec, 4, &[1, 2]).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.workers).collect::<Vec<_>>(),
            vec![1, 2]
        );
        assert!(rows.iter().all(|r| r.matrices_per_second > 0.0));
    }
}
