//! Exact computation of abelian and higher-order signature invariants of
//! knots and links: circle signature functions of Seifert forms, their
//! integrals, derived-series depth in free groups, and the rho-invariant
//! calculus for surgery descriptions built from infection.

pub mod error;
pub mod families;
pub mod freegroup;
pub mod infection;
pub mod ratio;
pub mod seifert;

pub use error::{Error, Result};
pub use families::{Approximation, IndependenceCertificate, KnotLibrary};
pub use freegroup::{DerivedDepth, FreeWord};
pub use infection::{BoundaryLinkExpr, ManifoldExpr, RhoVector};
pub use seifert::{Rho0Value, SeifertMatrix, SignatureFunction};
