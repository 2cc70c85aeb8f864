//! Watch the generator fill a 6x6 matrix with k = 4 one column at a time.
//! Each step shows how many rows were forced, open (sampled from) and full.

use binary_magic::generator::{partition_rows, Instrumentation};
use binary_magic::{Error, Generator, MagicSpec};

fn main() -> Result<(), Error> {
    let spec = MagicSpec::square(6, 4)?;
    let mut g = Generator::new(spec, 5)?.instrumentation(Instrumentation::On);
    while !g.is_done() {
        let p = partition_rows(g.state());
        println!(
            "t={} sums={:?} forced={:?} open={:?} full={:?}",
            g.state().column(),
            g.state().row_sums(),
            p.forced,
            p.open,
            p.full
        );
        let rec = g.step()?;
        println!(
            "   picked {} rows ({} forced + {} sampled)",
            rec.selected,
            rec.forced,
            rec.selected - rec.forced
        );
    }
    println!("\n{}", g.finish()?);
    Ok(())
}
