//! Gröbner–Shirshov bases for free associative algebras and singular
//! extensions of algebras (`M² = 0`) by presented algebras.

pub mod cli;
pub mod construct;
pub mod error;
pub mod extension;
pub mod freealg;
pub mod linalg;
pub mod problem;
pub mod rewriting;
pub mod scalar;

pub use error::{Error, Result};
pub use freealg::{Alphabet, DegLex, Poly, Word};
pub use scalar::{Field, Scalar};
