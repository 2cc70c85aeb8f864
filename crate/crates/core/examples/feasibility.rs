//! Which (row sum, column sum) pairs admit a matrix for a given shape.

use binary_magic::{decompose, feasible_pairs, is_feasible, Error};

fn main() -> Result<(), Error> {
    for (m, n) in [(4, 6), (3, 5), (6, 6), (12, 18), (7, 1)] {
        let pairs = feasible_pairs(m, n)?;
        println!("{m}x{n}: {} pairs {pairs:?}", pairs.len());
    }

    let d = decompose(4, 6, 3, 2)?;
    println!(
        "\n4x6 with sums (3, 2): gcd {} = rows {}*{} = cols {}*{}, multiplier {:?}",
        d.q, d.q, d.m_prime, d.q, d.n_prime, d.q_prime
    );

    // Coprime shapes only allow the empty and the full matrix.
    for a in 0..=5 {
        for b in 0..=3 {
            if is_feasible(3, 5, a, b)? {
                println!("3x5 feasible: a={a} b={b}");
            }
        }
    }
    Ok(())
}
