//! Iterated Bing doubles, expressed as a single infection of a trivial
//! link along a bracket of distinct meridians.
//!
//! Doubling k times yields 2^k components, and the companion curve is the
//! balanced bracket on the 2^k meridians, which sits at derived depth
//! exactly k. The depth claim is re-verified on every call rather than
//! trusted.

use crate::error::{Error, Result};
use crate::freegroup::{balanced_bracket, derived_depth, DerivedDepth, FreeWord};
use crate::infection::expr::{BoundaryLinkExpr, ManifoldExpr};
use crate::seifert::SeifertMatrix;

/// Result of the doubling construction: the surgery expression, the link it
/// is zero surgery on, and the verified curve data.
#[derive(Debug, Clone)]
pub struct BingDouble {
    pub expr: ManifoldExpr,
    pub link: BoundaryLinkExpr,
    pub components: usize,
    pub curve_depth: usize,
}

/// Word length grows as 4^k and the verification runs a level k+1 quotient,
/// so iteration counts past this are refused rather than left to crawl.
pub const MAX_ITERATIONS: usize = 3;

pub fn bing_double(knot: &SeifertMatrix, iterations: usize) -> Result<BingDouble> {
    if iterations > MAX_ITERATIONS {
        return Err(Error::Precondition(format!(
            "doubling is supported up to {MAX_ITERATIONS} iterations, requested {iterations}"
        )));
    }
    if iterations == 0 {
        let link = BoundaryLinkExpr::new(1, vec![(FreeWord::generator(1), knot.clone())])?;
        return Ok(BingDouble {
            expr: ManifoldExpr::knot(knot.clone()),
            link,
            components: 1,
            curve_depth: 0,
        });
    }
    let components = 1usize << iterations;
    let meridians: Vec<FreeWord> = (1..=components)
        .map(|i| FreeWord::generator(i as u32))
        .collect();
    let eta = balanced_bracket(&meridians);
    match derived_depth(&eta, iterations + 1) {
        DerivedDepth::Exact(d) if d == iterations => {}
        other => {
            return Err(Error::Precondition(format!(
                "curve {eta} should have depth {iterations}, found {other}"
            )))
        }
    }
    let expr = ManifoldExpr::infect(
        ManifoldExpr::trivial_link(components)?,
        eta.clone(),
        knot.clone(),
    )?;
    let link = BoundaryLinkExpr::new(components, vec![(eta, knot.clone())])?;
    Ok(BingDouble {
        expr,
        link,
        components,
        curve_depth: iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::parse_word;
    use crate::infection::rho::rho_vector;
    use crate::ratio::rat;
    use crate::seifert::registry::trefoil;
    use crate::seifert::Rho0Value;

    #[test]
    fn zero_iterations_is_the_knot_itself() {
        let b = bing_double(&trefoil(), 0).unwrap();
        assert_eq!(b.expr, ManifoldExpr::knot(trefoil()));
        assert_eq!((b.components, b.curve_depth), (1, 0));
        // the 1-strand link form evaluates identically
        assert_eq!(
            rho_vector(&b.link.to_manifold()).unwrap(),
            rho_vector(&b.expr).unwrap()
        );
    }

    #[test]
    fn single_double_uses_the_clasp_commutator() {
        let b = bing_double(&trefoil(), 1).unwrap();
        assert_eq!((b.components, b.curve_depth), (2, 1));
        let expected = ManifoldExpr::infect(
            ManifoldExpr::trivial_link(2).unwrap(),
            parse_word("[x1,x2]").unwrap(),
            trefoil(),
        )
        .unwrap();
        assert_eq!(b.expr, expected);
        let v = rho_vector(&b.expr).unwrap();
        assert_eq!(v.head(), &[Rho0Value::zero()]);
        assert_eq!(v.tail().value, rat(-4, 3));
    }

    #[test]
    fn double_double_reaches_depth_two_over_four_components() {
        let b = bing_double(&trefoil(), 2).unwrap();
        assert_eq!((b.components, b.curve_depth), (4, 2));
        let v = rho_vector(&b.expr).unwrap();
        assert_eq!(v.head(), &[Rho0Value::zero(), Rho0Value::zero()]);
        assert_eq!(v.tail().value, rat(-4, 3));
    }

    #[test]
    fn iteration_budget_is_enforced() {
        assert!(bing_double(&trefoil(), MAX_ITERATIONS + 1).is_err());
    }
}
