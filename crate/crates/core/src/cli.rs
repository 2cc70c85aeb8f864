//! Command-line front end behind the `bms` binary.
//!
//! Exit codes: 0 success, 1 domain failure (infeasible spec, oracle guard,
//! I/O), 2 validation failure, 64 usage error, 65 unparseable input.

use std::ffi::OsString;
use std::fs;
use std::hash::{BuildHasher, Hasher};
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{measure_batch_speedup, measure_scaling};
use crate::error::{fmt_pairs, Error};
use crate::format::{parse, render_entries, Entry, OutputFormat};
use crate::generator::{generate, generate_batch, BatchConfig};
use crate::rng::derive_seed;
use crate::spec::{feasible_pairs, MagicSpec};
use crate::validate::{detect, validate, Axis, Violation};
use crate::{oracle, BinaryMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;

#[derive(Debug, Parser)]
#[command(
    name = "bms",
    version,
    about = "Random binary matrices with constant row and column sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate random matrices.
    Gen(GenArgs),
    /// Check that every row and every column of a matrix has the same sum.
    Check(CheckArgs),
    /// List the feasible (row sum, column sum) pairs for a shape.
    Feasible(ShapeArgs),
    /// Count all matrices for a small spec by exhaustive enumeration.
    Count(SpecArgs),
    /// Time generation across sizes and fit a scaling exponent.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Dense,
    Coords,
    Pbm,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Dense => OutputFormat::Dense,
            FormatArg::Coords => OutputFormat::Coords,
            FormatArg::Pbm => OutputFormat::Pbm,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Args)]
struct ShapeArgs {
    /// Number of rows.
    #[arg(short = 'm', long = "rows")]
    rows: usize,
    /// Number of columns.
    #[arg(short = 'n', long = "cols")]
    cols: usize,
}

#[derive(Debug, Args)]
struct SpecArgs {
    /// Number of rows (defaults to the column count).
    #[arg(short = 'm', long = "rows")]
    rows: Option<usize>,
    /// Number of columns.
    #[arg(short = 'n', long = "cols")]
    cols: usize,
    /// Common row and column sum.
    #[arg(short = 'k', conflicts_with_all = ["row_sum", "col_sum"])]
    k: Option<usize>,
    /// Sum of every row.
    #[arg(long = "row-sum", requires = "col_sum")]
    row_sum: Option<usize>,
    /// Sum of every column.
    #[arg(long = "col-sum", requires = "row_sum")]
    col_sum: Option<usize>,
}

impl SpecArgs {
    fn spec(&self) -> Result<MagicSpec, Error> {
        let rows = self.rows.unwrap_or(self.cols);
        let (a, b) = match (self.k, self.row_sum, self.col_sum) {
            (Some(k), _, _) => (k, k),
            (None, Some(a), Some(b)) => (a, b),
            _ => (0, 0),
        };
        MagicSpec::new(rows, self.cols, a, b)
    }

    fn has_sums(&self) -> bool {
        self.k.is_some() || self.row_sum.is_some()
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Seed; drawn from system entropy when omitted. Always echoed to stderr.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of matrices; matrix i uses a seed derived from (seed, i).
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Worker threads for count > 1 (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, value_enum, default_value = "dense")]
    format: FormatArg,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Input file ("-" or omitted for stdin).
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "dense")]
    format: FormatArg,
    /// Expected row sum (inferred from row 0 when omitted).
    #[arg(long = "row-sum")]
    row_sum: Option<u64>,
    /// Expected column sum (inferred from column 0 when omitted).
    #[arg(long = "col-sum")]
    col_sum: Option<u64>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Comma-separated square sizes.
    #[arg(long, value_delimiter = ',', default_value = "500,1000,2000")]
    sizes: Vec<usize>,
    /// k as a fraction of n.
    #[arg(long = "k-fraction", default_value_t = 0.5)]
    k_fraction: f64,
    /// Timed repetitions per size (after one warm-up).
    #[arg(long, default_value_t = 5)]
    reps: usize,
    /// Comma-separated worker counts for a batch throughput comparison.
    #[arg(long, value_delimiter = ',')]
    workers: Vec<usize>,
    /// Matrices per batch in the throughput comparison.
    #[arg(long = "batch-count", default_value_t = 64)]
    batch_count: usize,
    /// CSV report path (stdout when omitted).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Optional JSON report path.
    #[arg(long)]
    json: Option<PathBuf>,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

/// Runs the CLI with explicit streams and returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
        }
    };
    let mut io = Io {
        stdin,
        stdout,
        stderr,
    };
    match cli.command {
        Command::Gen(a) => cmd_gen(&a, &mut io),
        Command::Check(a) => cmd_check(&a, &mut io),
        Command::Feasible(a) => cmd_feasible(&a, &mut io),
        Command::Count(a) => cmd_count(&a, &mut io),
        Command::Bench(a) => cmd_bench(&a, &mut io),
    }
}

/// Entry point for the binary: process arguments and standard streams.
pub fn main() -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

fn entropy_seed() -> u64 {
    let mut h = std::collections::hash_map::RandomState::new().build_hasher();
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or(0);
    h.write_u128(now);
    h.write_u32(std::process::id());
    h.finish()
}

fn domain_error(io: &mut Io, err: &Error) -> i32 {
    let _ = writeln!(io.stderr, "error: {err}");
    EXIT_DOMAIN
}

fn usage_error(io: &mut Io, msg: &str) -> i32 {
    let _ = writeln!(io.stderr, "error: {msg}");
    EXIT_USAGE
}

fn emit(io: &mut Io, path: Option<&PathBuf>, text: &str) -> i32 {
    let res = match path {
        Some(p) => fs::write(p, text),
        None => io.stdout.write_all(text.as_bytes()),
    };
    match res {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: cannot write output: {e}");
            EXIT_DOMAIN
        }
    }
}

fn resolve_spec(io: &mut Io, args: &SpecArgs) -> Result<MagicSpec, i32> {
    if !args.has_sums() {
        return Err(usage_error(io, "give -k or both --row-sum and --col-sum"));
    }
    match args.spec() {
        Ok(s) => Ok(s),
        Err(e) => Err(usage_error(io, &e.to_string())),
    }
}

fn infeasible(io: &mut Io, spec: &MagicSpec) -> i32 {
    let pairs = feasible_pairs(spec.rows(), spec.cols()).unwrap_or_default();
    let shown = if pairs.len() > 32 {
        format!(
            "{} ... ({} pairs)",
            fmt_pairs(&pairs[..32]).trim_end_matches(']'),
            pairs.len()
        )
    } else {
        fmt_pairs(&pairs)
    };
    let _ = writeln!(
        io.stderr,
        "error: no {}x{} matrix has row sum {} and column sum {}\nfeasible (row sum, column sum) pairs for {}x{}: {shown}",
        spec.rows(),
        spec.cols(),
        spec.row_sum(),
        spec.col_sum(),
        spec.rows(),
        spec.cols()
    );
    EXIT_DOMAIN
}

fn cmd_gen(args: &GenArgs, io: &mut Io) -> i32 {
    let spec = match resolve_spec(io, &args.spec) {
        Ok(s) => s,
        Err(code) => return code,
    };
    if !spec.is_feasible() {
        return infeasible(io, &spec);
    }
    let seed = args.seed.unwrap_or_else(entropy_seed);
    let _ = writeln!(io.stderr, "seed: {seed}");
    let result = if args.count == 1 {
        generate(&spec, seed).map(|m| vec![(m, seed)])
    } else {
        let cfg = BatchConfig {
            count: args.count,
            master_seed: seed,
            workers: args.workers,
        };
        generate_batch(&spec, &cfg).map(|ms| {
            ms.into_iter()
                .enumerate()
                .map(|(i, m)| (m, derive_seed(seed, i as u64)))
                .collect()
        })
    };
    let matrices = match result {
        Ok(ms) => ms,
        Err(e) => return domain_error(io, &e),
    };
    let entries: Vec<Entry> = matrices
        .iter()
        .map(|(m, s)| Entry {
            matrix: m,
            seed: Some(*s),
        })
        .collect();
    let text = render_entries(&entries, args.format.into());
    emit(io, args.output.as_ref(), &text)
}

fn describe(v: &Violation) -> String {
    let axis = match v.axis {
        Axis::Row => "row",
        Axis::Column => "column",
    };
    format!(
        "{axis} {} has sum {}, expected {}",
        v.index, v.observed, v.expected
    )
}

fn check_one(m: &BinaryMatrix, args: &CheckArgs) -> (bool, String) {
    let d = detect(m);
    let a = args
        .row_sum
        .or(d.report.row_sums.first().copied())
        .unwrap_or(0);
    let b = args
        .col_sum
        .or(d.report.col_sums.first().copied())
        .unwrap_or(0);
    if args.row_sum.is_none() && args.col_sum.is_none() {
        return match d.report.first_violation {
            None => (true, format!("VALID {}x{} a={a} b={b}", m.rows(), m.cols())),
            Some(v) => (
                false,
                format!("INVALID {}x{}: {}", m.rows(), m.cols(), describe(&v)),
            ),
        };
    }
    let spec = match MagicSpec::new(m.rows(), m.cols(), a as usize, b as usize) {
        Ok(s) => s,
        Err(e) => return (false, format!("INVALID {}x{}: {e}", m.rows(), m.cols())),
    };
    let report = validate(m, &spec).expect("spec built from the matrix shape");
    match report.first_violation {
        None => (true, format!("VALID {}x{} a={a} b={b}", m.rows(), m.cols())),
        Some(v) => (
            false,
            format!("INVALID {}x{}: {}", m.rows(), m.cols(), describe(&v)),
        ),
    }
}

fn cmd_check(args: &CheckArgs, io: &mut Io) -> i32 {
    let mut text = String::new();
    let read = match &args.input {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map(|s| text = s),
        _ => io.stdin.read_to_string(&mut text).map(|_| ()),
    };
    if let Err(e) = read {
        let _ = writeln!(io.stderr, "error: cannot read input: {e}");
        return EXIT_DOMAIN;
    }
    let matrices = match parse(&text, args.format.into()) {
        Ok(ms) => ms,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            return EXIT_PARSE;
        }
    };
    let mut all_valid = true;
    let many = matrices.len() > 1;
    for (idx, m) in matrices.iter().enumerate() {
        let (ok, line) = check_one(m, args);
        all_valid &= ok;
        let _ = if many {
            writeln!(io.stdout, "[{idx}] {line}")
        } else {
            writeln!(io.stdout, "{line}")
        };
    }
    if all_valid {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

fn cmd_feasible(args: &ShapeArgs, io: &mut Io) -> i32 {
    match feasible_pairs(args.rows, args.cols) {
        Ok(pairs) => {
            let text: String = pairs.iter().map(|(a, b)| format!("{a} {b}\n")).collect();
            emit(io, None, &text)
        }
        Err(e) => usage_error(io, &e.to_string()),
    }
}

fn cmd_count(args: &SpecArgs, io: &mut Io) -> i32 {
    let spec = match resolve_spec(io, args) {
        Ok(s) => s,
        Err(code) => return code,
    };
    match oracle::count(&spec) {
        Ok(c) => emit(io, None, &format!("{c}\n")),
        Err(e) => domain_error(io, &e),
    }
}

fn cmd_bench(args: &BenchArgs, io: &mut Io) -> i32 {
    if args.sizes.is_empty() || args.sizes.contains(&0) {
        return usage_error(io, "sizes must be positive");
    }
    if !(0.0..=1.0).contains(&args.k_fraction) {
        return usage_error(io, "--k-fraction must lie in [0, 1]");
    }
    let report = match measure_scaling(&args.sizes, args.k_fraction, args.reps) {
        Ok(r) => r,
        Err(e) => return domain_error(io, &e),
    };
    let _ = match report.exponent {
        Some(x) => writeln!(io.stderr, "exponent: {x:.3}"),
        None => writeln!(io.stderr, "exponent: n/a"),
    };
    if !args.workers.is_empty() {
        let n = *args.sizes.iter().max().expect("non-empty");
        let spec = match MagicSpec::square(n, crate::bench::k_for(n, args.k_fraction)) {
            Ok(s) => s,
            Err(e) => return domain_error(io, &e),
        };
        match measure_batch_speedup(&spec, args.batch_count, &args.workers) {
            Ok(rows) => {
                for r in rows {
                    let _ = writeln!(
                        io.stderr,
                        "batch n={n} workers={} matrices_per_second={:.3}",
                        r.workers, r.matrices_per_second
                    );
                }
            }
            Err(e) => return domain_error(io, &e),
        }
    }
    if let Some(p) = &args.json {
        let json = serde_json::to_string_pretty(&report).expect("plain data");
        if let Err(e) = fs::write(p, json + "\n") {
            let _ = writeln!(io.stderr, "error: cannot write {}: {e}", p.display());
            return EXIT_DOMAIN;
        }
    }
    emit(io, args.report.as_ref(), &report.to_csv())
}
