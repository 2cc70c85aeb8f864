//! Times square generation at growing sizes and fits the log-log slope.
//!
//! cargo run --release --example scaling -- 1000 2000 4000

use binary_magic::bench::measure_scaling;

fn main() -> Result<(), binary_magic::Error> {
    let mut sizes: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    if sizes.is_empty() {
        sizes = vec![1000, 2000, 4000];
    }
    let report = measure_scaling(&sizes, 0.5, 5)?;
    print!("{}", report.to_csv());
    match report.exponent {
        Some(x) => println!("scaling exponent: {x:.3} (quadratic work predicts 2)"),
        None => println!("scaling exponent: needs at least two distinct sizes"),
    }
    Ok(())
}
