//! Parallel batch generation. The output depends only on the master seed,
//! never on the number of workers.

use std::time::Instant;

use binary_magic::{generate_batch, validate, BatchConfig, Error, MagicSpec};

fn main() -> Result<(), Error> {
    let spec = MagicSpec::square(256, 128)?;
    let mut reference = None;
    for workers in [1, 2, 4, 0] {
        let cfg = BatchConfig {
            count: 32,
            master_seed: 2024,
            workers,
        };
        let start = Instant::now();
        let out = generate_batch(&spec, &cfg)?;
        let secs = start.elapsed().as_secs_f64();
        assert!(out
            .iter()
            .all(|m| validate(m, &spec).map(|r| r.is_valid).unwrap_or(false)));
        let same = reference.get_or_insert_with(|| out.clone()) == &out;
        println!(
            "workers={workers}: {:.1} matrices/s, identical to first run: {same}",
            out.len() as f64 / secs
        );
    }
    Ok(())
}
