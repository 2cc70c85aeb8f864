//! Deterministic witnesses: the circulant square and its tiling.

use binary_magic::constructive::{circulant, deterministic_rect, tile};
use binary_magic::{validate, Error, MagicSpec};

fn main() -> Result<(), Error> {
    let c = circulant(6, 4)?;
    println!("circulant(6, 4):\n{c}\n");

    let base = circulant(2, 1)?;
    let tiled = tile(&base, 2, 3)?;
    println!("circulant(2, 1) tiled 2 down, 3 across:\n{tiled}\n");

    let spec = MagicSpec::new(12, 18, 9, 6)?;
    let w = deterministic_rect(&spec)?;
    println!("witness for {spec:?}:\n{w}");
    println!("valid: {}", validate(&w, &spec)?.is_valid);
    Ok(())
}
