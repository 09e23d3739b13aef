//! Statistics on perfect matchings, bicolored matchings and restricted
//! permutations of types A, B and D, together with the bijections and
//! sorting procedures that relate them.
//!
//! Everything is 1-based: vertices of a matching on `[2n]` are `1..=2n`,
//! permutation windows are `σ(1)..σ(n)`, and statistic sets are subsets of
//! `1..=n`. The [`verify`] module enumerates every object at small sizes and
//! checks the generating-function identities exactly.

pub mod bicolored;
pub mod cli;
pub mod dyck;
pub mod error;
pub mod formulas;
pub mod matching;
pub mod perm;
pub mod poly;
pub mod sets;
pub mod signed;
pub mod verify;

pub use bicolored::{BicoloredMatching, Color, ColorVector};
pub use dyck::{DyckPath, RestrictionSequence, Step, WeightVector};
pub use error::{Error, Result};
pub use matching::Matching;
pub use perm::Permutation;
pub use poly::{Monomial, Polynomial, Var};
pub use sets::IndexSet;
pub use signed::SignedPermutation;

