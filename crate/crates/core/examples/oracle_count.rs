//! Exhaustive counts for small squares, and a check that the generator
//! reaches every 3x3 permutation matrix.

use std::collections::BTreeSet;

use binary_magic::oracle::{count, enumerate, DEFAULT_COLLECT_LIMIT};
use binary_magic::{generate, Error, MagicSpec};

fn main() -> Result<(), Error> {
    for n in 1..=6 {
        let row: Vec<String> = (0..=n)
            .map(|k| count(&MagicSpec::square(n, k).unwrap()).map(|c| c.to_string()))
            .collect::<Result<_, _>>()?;
        println!("n={n}: {}", row.join(" "));
    }

    let spec = MagicSpec::square(3, 1)?;
    let all: BTreeSet<_> = enumerate(&spec, DEFAULT_COLLECT_LIMIT)?
        .matrices
        .into_iter()
        .collect();
    let seen: BTreeSet<_> = (0..5000)
        .map(|s| generate(&spec, s))
        .collect::<Result<_, _>>()?;
    println!(
        "\n(3, 1): oracle {} matrices, generator reached {}, same set: {}",
        all.len(),
        seen.len(),
        all == seen
    );
    Ok(())
}
