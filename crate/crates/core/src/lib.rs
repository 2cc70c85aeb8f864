//! Random binary matrices whose rows all sum to one constant and whose
//! columns all sum to another ("binary magic squares", square or not).
//!
//! * [`generate`] fills a matrix column by column from a seed.
//! * [`validate`] checks row and column sums against a [`MagicSpec`].
//! * [`is_feasible`], [`feasible_pairs`] and [`decompose`] describe which
//!   `(m, n, a, b)` admit a solution at all.
//! * [`constructive`] builds deterministic witnesses (circulant and tiled).
//! * [`oracle`] enumerates small instances exhaustively.
//! * [`bench`] measures scaling and batch throughput.
//!
//! ```
//! use binary_magic::{generate, validate, MagicSpec};
//!
//! let spec = MagicSpec::square(5, 3)?;
//! let m = generate(&spec, 7)?;
//! assert!(validate(&m, &spec)?.is_valid);
//! # Ok::<(), binary_magic::Error>(())
//! ```

pub mod bench;
pub mod cli;
pub mod constructive;
mod error;
pub mod format;
pub mod generator;
mod matrix;
pub mod oracle;
pub mod rng;
mod spec;
mod validate;

pub use error::{Error, Result};
pub use generator::{generate, generate_batch, BatchConfig, Generator, Instrumentation};
pub use matrix::BinaryMatrix;
pub use spec::{
    decompose, feasible_pairs, gcd, is_feasible, nearest_pairs, GcdDecomposition, MagicSpec,
    MAX_DIM,
};
pub use validate::{detect, validate, Axis, Detected, ValidationReport, Violation};
