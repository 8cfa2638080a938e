//! Knot libraries, target approximation, relation certificates, and
//! generation of infected-link families.

pub mod approx;
pub mod generate;
pub mod independence;
pub mod library;

pub use approx::{approximate_target, approximate_target_with, Approximation};
pub use generate::{arf_zero_twist_sums, generate_family};
pub use independence::{independence_certificate, IndependenceCertificate, RelationVerdict};
pub use library::{KnotEntry, KnotLibrary};
