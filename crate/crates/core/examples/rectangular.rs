//! Non-square generation: a 4x6 matrix whose rows sum to 3 and columns to 2,
//! and what happens when the sums do not balance.

use binary_magic::{generate, validate, Error, MagicSpec};

fn main() -> Result<(), Error> {
    let spec = MagicSpec::new(4, 6, 3, 2)?;
    let m = generate(&spec, 1)?;
    println!("{m}\n");
    println!("valid: {}", validate(&m, &spec)?.is_valid);

    // 3 * 2 ones by rows but 5 * 1 by columns: no such matrix.
    let bad = MagicSpec::new(3, 5, 2, 1)?;
    match generate(&bad, 1) {
        Err(e @ Error::Infeasible { .. }) => println!("\n{e}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
