//! Seifert matrices, Alexander polynomials and circle signature invariants.

pub mod matrix;
pub mod poly;
pub mod quadform;
pub mod registry;
pub mod signature;
pub mod trig;

pub use matrix::SeifertMatrix;
pub use signature::{
    circle_roots, rho0, rho0_with_tolerance, signature_at_cos, signature_function,
    signature_function_with_width, symmetrized_form, Breakpoint, ComplexRat, Rho0Value,
    SignatureFunction, UnitCirclePoint,
};
