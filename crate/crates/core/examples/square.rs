//! Generate a 5x5 matrix with every row and column summing to 3.
//!
//! cargo run --example square -- [seed]

use binary_magic::{generate, validate, MagicSpec};

fn main() -> Result<(), binary_magic::Error> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let spec = MagicSpec::square(5, 3)?;
    let m = generate(&spec, seed)?;
    println!("{m}");
    let report = validate(&m, &spec)?;
    println!("row sums {:?}", report.row_sums);
    println!("col sums {:?}", report.col_sums);
    println!("valid: {}", report.is_valid);
    Ok(())
}
