//! Free groups, free differential calculus, and solvable quotients.

pub mod canonical;
pub mod fox;
pub mod laurent;
pub mod ring;
pub mod solvable;
pub mod word;

pub use canonical::{balanced_bracket, canonical_word};
pub use fox::{fox_derivative, FreeGroupRing};
pub use solvable::{derived_depth, project, DerivedDepth, SolvableElement};
pub use word::{commutator, parse_word, FreeWord};
