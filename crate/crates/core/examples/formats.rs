//! The four serializations, each parsed back.

use binary_magic::format::{parse_one, render, OutputFormat};
use binary_magic::{generate, Error, MagicSpec};

fn main() -> Result<(), Error> {
    let m = generate(&MagicSpec::new(3, 6, 4, 2)?, 9)?;
    for f in OutputFormat::ALL {
        let text = render(&m, f);
        println!("--- {} ---\n{text}", f.name());
        assert_eq!(parse_one(&text, f)?, m);
    }
    Ok(())
}
