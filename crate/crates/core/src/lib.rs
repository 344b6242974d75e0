//! Greedy p-ary lexicographic codes over prime fields.
//!
//! The crate builds lexicodes under the standard basis and under the
//! one-step modified bases `F(xi, eta)`, decides when they are linear, and
//! computes the structural data (column profiles, Griesmer gaps, weight
//! enumerators) used to recognize simplex repetitions, Solomon–Stiffler
//! codes and the ternary Golay code.

pub mod analysis;
pub mod error;
pub mod field;
pub mod greedy;
pub mod oracle;
mod search;
pub mod vecspace;

pub use error::{Error, Result};
pub use field::{DigitString, PrimeModulus};
pub use greedy::{CodeSpec, GeneratorSet, LexCode, SearchBudget, Variant};
pub use vecspace::{Basis, IndexSet, Vector};
