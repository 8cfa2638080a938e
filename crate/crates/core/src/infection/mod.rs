//! Surgery-description expressions and the rho rewrite engine built on
//! them: evaluation, slice obstructions, filtration tags, doubling
//! constructions, and the text DSL.

pub mod bing;
pub mod dsl;
pub mod expr;
pub mod rho;
pub mod tags;

pub use bing::{bing_double, BingDouble};
pub use dsl::parse_dsl;
pub use expr::{BoundaryLinkExpr, InfectionCurve, ManifoldExpr};
pub use rho::{
    rho, rho_vector, rho_vector_with, slice_obstruction, slice_obstruction_with, EvalOptions,
    Evaluator, RhoVector, SliceVerdict,
};
pub use tags::{
    check_vanishing, check_vanishing_with, infer_link_tags, infer_tags, infer_tags_with,
    DegreeBound, FiltrationTags, VanishingCheck, VanishingReport,
};
