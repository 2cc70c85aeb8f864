//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs as part of `cargo test`.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use binary_magic::bench::measure_scaling;
use binary_magic::constructive::circulant;
use binary_magic::format::{render, OutputFormat};
use binary_magic::generator::{generate_batch_with, generate_with, Generator, Instrumentation};
use binary_magic::{
    decompose, feasible_pairs, is_feasible, oracle, validate, BatchConfig, BinaryMatrix, MagicSpec,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Step-invariant tallies gathered while the validity sweeps run.
#[derive(Default)]
struct StepTally {
    steps: u64,
    failures: u64,
}

/// Generates column by column with instrumentation on, re-checking the
/// running row-sum window and the column count from outside after each step.
fn generate_observed(spec: &MagicSpec, seed: u64, tally: &mut StepTally) -> Option<BinaryMatrix> {
    let mut g = Generator::new(*spec, seed)
        .ok()?
        .instrumentation(Instrumentation::On);
    let (a, n, b) = (
        spec.row_sum() as i64,
        spec.cols() as i64,
        spec.col_sum() as u64,
    );
    while !g.is_done() {
        tally.steps += 1;
        let t = g.state().column();
        match g.step() {
            Ok(rec) => {
                let lo = a + (t as i64 + 1) - n;
                let window_ok = g
                    .state()
                    .row_sums()
                    .iter()
                    .all(|&s| lo <= s as i64 && s as i64 <= a);
                let column_ok = g.matrix().col_sum(t) == b && rec.selected as u64 == b;
                if !(window_ok && column_ok) {
                    tally.failures += 1;
                }
            }
            Err(_) => {
                tally.failures += 1;
                return None;
            }
        }
    }
    let finished = g.matrix().clone();
    let fast = generate_with(spec, seed, Instrumentation::On).ok()?;
    (finished == fast).then_some(fast)
}

fn square_sweep(tally: &mut StepTally) -> Outcome {
    let start = Instant::now();
    let (mut total, mut valid) = (0u64, 0u64);
    for n in 1..=16 {
        for k in 0..=n {
            let spec = MagicSpec::square(n, k).unwrap();
            for seed in 0..25 {
                total += 1;
                if let Some(m) = generate_observed(&spec, seed, tally) {
                    if validate(&m, &spec).map(|r| r.is_valid).unwrap_or(false) {
                        valid += 1;
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        valid == total && secs < 10.0,
        format!("{valid}/{total} valid in {secs:.2}s (limit 10s)"),
    )
}

fn rect_sweep(tally: &mut StepTally) -> Outcome {
    let start = Instant::now();
    let (mut total, mut valid) = (0u64, 0u64);
    for m in 1..=10 {
        for n in 1..=10 {
            for (a, b) in feasible_pairs(m, n).unwrap() {
                let spec = MagicSpec::new(m, n, a, b).unwrap();
                for seed in 0..10 {
                    total += 1;
                    if let Some(mat) = generate_observed(&spec, seed, tally) {
                        if validate(&mat, &spec).map(|r| r.is_valid).unwrap_or(false) {
                            valid += 1;
                        }
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        valid == total && secs < 10.0,
        format!("{valid}/{total} valid in {secs:.2}s (limit 10s)"),
    )
}

fn theorem_equivalence() -> Outcome {
    let start = Instant::now();
    let (mut tuples, mut disagreements) = (0u64, 0u64);
    for m in 1..=6 {
        for n in 1..=6 {
            for a in 0..=n {
                for b in 0..=m {
                    tuples += 1;
                    let predicate = is_feasible(m, n, a, b).unwrap();
                    let gcd_form = decompose(m, n, a, b).is_ok();
                    let brute = oracle::exists(m, n, a, b).unwrap();
                    if predicate != brute || gcd_form != brute {
                        disagreements += 1;
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        disagreements == 0 && secs < 30.0,
        format!("{disagreements} disagreements over {tuples} tuples in {secs:.2}s (limit 30s)"),
    )
}

fn counting_fixtures() -> Outcome {
    let c = |n, k| oracle::count(&MagicSpec::square(n, k).unwrap()).unwrap();
    let fixed = [(3, 1, 6), (4, 1, 24), (4, 2, 90)];
    let mut bad = Vec::new();
    for (n, k, want) in fixed {
        let got = c(n, k);
        if got != want {
            bad.push(format!("count({n},{k})={got}, want {want}"));
        }
    }
    for n in 1..=4 {
        for k in 0..=n {
            if c(n, k) != c(n, n - k) {
                bad.push(format!("count({n},{k}) != count({n},{})", n - k));
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "6, 24, 90 and complement symmetry for n <= 4".to_string()
        } else {
            bad.join("; ")
        },
    )
}

fn support_coverage() -> Outcome {
    let spec = MagicSpec::square(3, 1).unwrap();
    let expected: BTreeSet<BinaryMatrix> = oracle::enumerate(&spec, oracle::DEFAULT_COLLECT_LIMIT)
        .unwrap()
        .matrices
        .into_iter()
        .collect();
    let seen: BTreeSet<BinaryMatrix> = (0..5000)
        .map(|seed| generate_with(&spec, seed, Instrumentation::On).unwrap())
        .collect();
    outcome(
        seen == expected && expected.len() == 6,
        format!(
            "{} distinct outputs, oracle has {}",
            seen.len(),
            expected.len()
        ),
    )
}

fn circulant_construction() -> Outcome {
    let mut bad = 0;
    let mut cases = 0;
    for n in 1..=64usize {
        for k in 0..=n {
            cases += 1;
            let c = circulant(n, k).unwrap();
            let valid = validate(&c, &MagicSpec::square(n, k).unwrap())
                .unwrap()
                .is_valid;
            let entries_ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    let interval = (i <= j && j < i + k) || (i <= j + n && j + n < i + k);
                    let cyclic = (j + n - i) % n < k;
                    c.get(i, j) == interval && interval == cyclic
                })
            });
            if !(valid && entries_ok) {
                bad += 1;
            }
        }
    }
    outcome(bad == 0, format!("{cases} (n, k) cases, {bad} failures"))
}

fn determinism() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut problems = Vec::new();
    let mut files = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let Some(stem) = name
            .strip_prefix("gen_")
            .and_then(|s| s.strip_suffix(".dense"))
        else {
            continue;
        };
        // gen_<m>x<n>_a<a>_b<b>_seed<seed>.dense
        let parts: Vec<&str> = stem.split('_').collect();
        let (m, n) = parts[0].split_once('x').unwrap();
        let num = |s: &str, p: &str| s.strip_prefix(p).unwrap().parse::<u64>().unwrap();
        let spec = MagicSpec::new(
            m.parse().unwrap(),
            n.parse().unwrap(),
            num(parts[1], "a") as usize,
            num(parts[2], "b") as usize,
        )
        .unwrap();
        let seed = num(parts[3], "seed");
        let golden = std::fs::read_to_string(&path).unwrap();
        files += 1;
        for _ in 0..3 {
            for checks in [Instrumentation::On, Instrumentation::Off] {
                let text = render(
                    &generate_with(&spec, seed, checks).unwrap(),
                    OutputFormat::Dense,
                );
                if text != golden {
                    problems.push(name.clone());
                }
            }
        }
    }
    let spec = MagicSpec::square(8, 3).unwrap();
    let batch = |workers| {
        generate_batch_with(
            &spec,
            &BatchConfig {
                count: 100,
                master_seed: 77,
                workers,
            },
            Instrumentation::On,
        )
        .unwrap()
    };
    let serial = batch(1);
    let batch_ok = [0, 2, 4].into_iter().all(|w| batch(w) == serial);
    if !batch_ok {
        problems.push("batch output depends on worker count".into());
    }
    outcome(
        problems.is_empty() && files >= 8,
        format!("{files} golden files x 6 runs, batch workers {{1,0,2,4}}; problems: {problems:?}"),
    )
}

fn complexity() -> Outcome {
    let report = measure_scaling(&[1000, 2000, 4000], 0.5, 7).unwrap();
    let exponent = report.exponent.unwrap_or(f64::NAN);
    let t4000 = report
        .entries
        .last()
        .map(|e| e.median_seconds)
        .unwrap_or(f64::INFINITY);
    let within = (1.7..=2.3).contains(&exponent);
    let fast = Duration::from_secs_f64(t4000) < Duration::from_secs(5);
    outcome(
        within && fast,
        format!("exponent {exponent:.3} (range [1.7, 2.3]); n=4000 median {t4000:.3}s (limit 5s)"),
    )
}

fn main() {
    let mut tally = StepTally::default();
    let mut results: Vec<(&str, Outcome)> = vec![
        ("square validity sweep", square_sweep(&mut tally)),
        ("rectangular validity sweep", rect_sweep(&mut tally)),
    ];
    results.push((
        "step invariants (instrumented)",
        outcome(
            tally.failures == 0 && tally.steps > 0,
            format!(
                "{} column steps checked, {} failures",
                tally.steps, tally.failures
            ),
        ),
    ));
    results.push(("feasibility equivalence vs oracle", theorem_equivalence()));
    results.push(("counting fixtures", counting_fixtures()));
    results.push(("support coverage (n=3, k=1)", support_coverage()));
    results.push(("circulant construction", circulant_construction()));
    results.push(("determinism", determinism()));
    results.push(("complexity scaling", complexity()));

    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "[{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
