//! Bounded integer-relation certificates for lists of rho0 values.
//!
//! "Independent" here never means linear independence over the integers,
//! which no finite computation can certify for real numbers. The statement
//! a certificate makes is exactly this: among all nonzero integer vectors c
//! with every |c_i| <= B, none brings |sum c_i v_i| within the tolerance.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ratio::format_rational;
use crate::seifert::signature::Rho0Value;

/// Outcome of the bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationVerdict {
    /// Exhaustive: no nonzero |c_i| <= bound has |sum c_i v_i| <= tolerance.
    NoRelationUpTo { bound: i64, tolerance: BigRational },
    /// The recorded coefficients bring the sum within tolerance, accounting
    /// for the error bounds of the values.
    RelationFound { coefficients: Vec<i64> },
}

/// A reproducible record of one bounded relation search: the value
/// enclosures that went in, the search box, and the verdict.
#[derive(Debug, Clone)]
pub struct IndependenceCertificate {
    values: Vec<Rho0Value>,
    bound: i64,
    tolerance: BigRational,
    verdict: RelationVerdict,
    method: String,
}

impl IndependenceCertificate {
    pub fn values(&self) -> &[Rho0Value] {
        &self.values
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn tolerance(&self) -> &BigRational {
        &self.tolerance
    }

    pub fn verdict(&self) -> &RelationVerdict {
        &self.verdict
    }

    pub fn method(&self) -> &str {
        &self.method
    }

    /// Substitutes a RelationFound vector back into the stored values and
    /// checks it still lands within tolerance. NoRelationUpTo has nothing
    /// to substitute and passes vacuously.
    pub fn reproduces(&self) -> bool {
        match &self.verdict {
            RelationVerdict::NoRelationUpTo { .. } => true,
            RelationVerdict::RelationFound { coefficients } => {
                if coefficients.len() != self.values.len() {
                    return false;
                }
                let (sum, slack) = substitute(&self.values, coefficients);
                sum.abs() + slack <= self.tolerance
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let verdict = match &self.verdict {
            RelationVerdict::NoRelationUpTo { bound, tolerance } => json!({
                "kind": "no_relation_up_to",
                "bound": bound,
                "tolerance": format_rational(tolerance),
            }),
            RelationVerdict::RelationFound { coefficients } => json!({
                "kind": "relation_found",
                "coefficients": coefficients,
            }),
        };
        json!({
            "values": self.values.iter().map(|v| json!({
                "value": format_rational(&v.value),
                "error_bound": format_rational(&v.error_bound),
            })).collect::<Vec<_>>(),
            "bound": self.bound,
            "tolerance": format_rational(&self.tolerance),
            "verdict": verdict,
            "method": self.method,
        })
    }
}

/// Exact combination value and its accumulated error slack.
fn substitute(values: &[Rho0Value], coefficients: &[i64]) -> (BigRational, BigRational) {
    let mut sum = BigRational::zero();
    let mut slack = BigRational::zero();
    for (v, &c) in values.iter().zip(coefficients) {
        let f = BigRational::from_integer(BigInt::from(c));
        sum += &v.value * &f;
        slack += &v.error_bound * f.abs();
    }
    (sum, slack)
}

const FIXED_SHIFT: u32 = 60;
/// Upper bound on box cardinality (2B+1)^k for the exhaustive scan.
const SEARCH_CAP: f64 = 2.0e9;
/// Upper bound on candidates surviving the prefilter before the tolerance
/// is declared too coarse to be useful.
const CANDIDATE_CAP: usize = 100_000;

/// Searches every nonzero integer vector with |c_i| <= bound for a
/// combination of the given values within the tolerance.
///
/// Requires every error bound below tolerance / (len * bound), so that the
/// accumulated slack of any candidate stays below the tolerance itself;
/// anything looser could not support either verdict and is rejected up
/// front. The scan runs in 2^-60 fixed point with a slack-padded threshold,
/// so no true relation can slip past it; survivors are confirmed or refuted
/// in exact rational arithmetic, and a survivor that cannot be decided
/// either way raises an error demanding refined enclosures rather than
/// guessing.
pub fn independence_certificate(
    values: &[Rho0Value],
    bound: i64,
    tolerance: &BigRational,
) -> Result<IndependenceCertificate> {
    if values.is_empty() {
        return Err(Error::Precondition(
            "relation search needs at least one value".into(),
        ));
    }
    if bound < 1 {
        return Err(Error::Precondition(
            "coefficient bound must be at least 1".into(),
        ));
    }
    if !tolerance.is_positive() {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let k = values.len();
    let per_value = tolerance / BigRational::from_integer(BigInt::from(k as i64 * bound));
    for (i, v) in values.iter().enumerate() {
        if v.error_bound >= per_value {
            return Err(Error::Precondition(format!(
                "error bound of value {i} is {}, need below tolerance/(len*bound) = {}; refine and retry",
                format_rational(&v.error_bound),
                format_rational(&per_value),
            )));
        }
    }
    let box_size = (2.0 * bound as f64 + 1.0).powi(k as i32);
    if box_size > SEARCH_CAP {
        return Err(Error::Precondition(format!(
            "search box (2*{bound}+1)^{k} exceeds the exhaustive budget"
        )));
    }

    let scale = BigRational::from_integer(BigInt::one() << FIXED_SHIFT);
    let fixed: Vec<i128> = values
        .iter()
        .map(|v| {
            (&v.value * &scale)
                .round()
                .to_integer()
                .to_i128()
                .ok_or_else(|| Error::Precondition("value too large for fixed-point scan".into()))
        })
        .collect::<Result<Vec<_>>>()?;

    // Threshold covering the tolerance, the enclosure slack of any in-box
    // vector, and the rounding of each value to fixed point.
    let slack_cap: BigRational = values
        .iter()
        .map(|v| &v.error_bound * BigRational::from_integer(BigInt::from(bound)))
        .sum();
    let thresh_rat = (tolerance + slack_cap) * &scale;
    let mut thresh =
        thresh_rat.ceil().to_integer().to_i128().ok_or_else(|| {
            Error::Precondition("tolerance too large for fixed-point scan".into())
        })?;
    thresh += (k as i128 * bound as i128) / 2 + 1;
    if thresh > 1i128 << 100 {
        return Err(Error::Precondition(
            "tolerance too large for fixed-point scan".into(),
        ));
    }

    // Subtree reach from each level down, for pruning.
    let mut reach = vec![0i128; k + 1];
    for i in (0..k).rev() {
        let term = fixed[i]
            .checked_abs()
            .and_then(|a| a.checked_mul(bound as i128))
            .and_then(|t| t.checked_add(reach[i + 1]))
            .ok_or_else(|| Error::Precondition("values too large for fixed-point scan".into()))?;
        reach[i] = term;
    }

    let mut candidates: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![0i64; k];
    scan(
        0,
        0,
        &fixed,
        bound,
        &reach,
        thresh,
        &mut cur,
        &mut candidates,
    )?;

    // Confirm or refute each survivor exactly.
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for c in candidates {
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        let (sum, slack) = substitute(values, &c);
        let abs = sum.abs();
        if &abs + &slack <= *tolerance {
            relations.push(canonical_sign(c));
        } else if &abs - &slack <= *tolerance {
            return Err(Error::Precondition(format!(
                "candidate {c:?} lands within slack of the tolerance; refine the value enclosures"
            )));
        }
    }

    let method = format!(
        "exhaustive scan of nonzero integer vectors with |c_i| <= {bound}, \
         2^-{FIXED_SHIFT} fixed-point prefilter, exact rational confirmation"
    );
    let verdict = match minimal_relation(relations) {
        Some(coefficients) => RelationVerdict::RelationFound { coefficients },
        None => RelationVerdict::NoRelationUpTo {
            bound,
            tolerance: tolerance.clone(),
        },
    };
    Ok(IndependenceCertificate {
        values: values.to_vec(),
        bound,
        tolerance: tolerance.clone(),
        verdict,
        method,
    })
}

/// Depth-first walk of the coefficient box keeping partial sums in fixed
/// point. The innermost level steps incrementally instead of recursing.
#[allow(clippy::too_many_arguments)]
fn scan(
    level: usize,
    partial: i128,
    fixed: &[i128],
    bound: i64,
    reach: &[i128],
    thresh: i128,
    cur: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) -> Result<()> {
    if partial.abs() > thresh.saturating_add(reach[level]) {
        return Ok(());
    }
    if level == fixed.len() - 1 {
        let w = fixed[level];
        let mut s = partial - w * bound as i128;
        for c in -bound..=bound {
            if s.abs() <= thresh {
                cur[level] = c;
                out.push(cur.clone());
                if out.len() > CANDIDATE_CAP {
                    return Err(Error::Precondition(
                        "tolerance admits too many near-relations; tighten it".into(),
                    ));
                }
            }
            s += w;
        }
        return Ok(());
    }
    for c in -bound..=bound {
        cur[level] = c;
        scan(
            level + 1,
            partial + fixed[level] * c as i128,
            fixed,
            bound,
            reach,
            thresh,
            cur,
            out,
        )?;
    }
    Ok(())
}

/// Flips the sign so the first nonzero coefficient is positive; c and -c
/// witness the same relation.
fn canonical_sign(mut c: Vec<i64>) -> Vec<i64> {
    if let Some(first) = c.iter().find(|&&x| x != 0) {
        if *first < 0 {
            for x in &mut c {
                *x = -*x;
            }
        }
    }
    c
}

/// Deterministic representative: smallest max-norm, then smallest L1 norm,
/// then lexicographic.
fn minimal_relation(mut relations: Vec<Vec<i64>>) -> Option<Vec<i64>> {
    relations.sort();
    relations.dedup();
    relations.into_iter().min_by_key(|c| {
        (
            c.iter().map(|x| x.abs()).max().unwrap_or(0),
            c.iter().map(|x| x.abs()).sum::<i64>(),
            c.clone(),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use crate::seifert::registry::twist_knot;
    use crate::seifert::signature::rho0_with_tolerance;

    fn tau() -> BigRational {
        rat(1, 1_000_000)
    }

    #[test]
    fn mirror_pair_yields_the_unit_relation() {
        let values = [Rho0Value::exact(rat(-4, 3)), Rho0Value::exact(rat(4, 3))];
        let cert = independence_certificate(&values, 20, &tau()).unwrap();
        assert_eq!(
            cert.verdict(),
            &RelationVerdict::RelationFound {
                coefficients: vec![1, 1]
            }
        );
        assert!(cert.reproduces());
    }

    #[test]
    fn single_nonzero_value_has_no_relation() {
        let values = [Rho0Value::exact(rat(-4, 3))];
        let cert = independence_certificate(&values, 10, &rat(1, 1_000_000_000)).unwrap();
        assert!(matches!(
            cert.verdict(),
            RelationVerdict::NoRelationUpTo { bound: 10, .. }
        ));
        assert!(cert.reproduces());
    }

    #[test]
    fn exact_zero_value_is_its_own_relation() {
        let values = [Rho0Value::zero(), Rho0Value::exact(rat(-4, 3))];
        let cert = independence_certificate(&values, 5, &tau()).unwrap();
        assert_eq!(
            cert.verdict(),
            &RelationVerdict::RelationFound {
                coefficients: vec![1, 0]
            }
        );
    }

    #[test]
    fn near_relation_outside_tolerance_is_refuted() {
        // v2 = 2 v1 + 1.2e-6 with 2e-8 bounds: candidate (-2, 1) survives
        // the prefilter but exact confirmation pushes it out.
        let bound = rat(1, 50_000_000);
        let values = [
            Rho0Value {
                value: rat(1, 1),
                error_bound: bound.clone(),
            },
            Rho0Value {
                value: rat(2, 1) + rat(12, 10_000_000),
                error_bound: bound,
            },
        ];
        let cert = independence_certificate(&values, 20, &tau()).unwrap();
        assert!(matches!(
            cert.verdict(),
            RelationVerdict::NoRelationUpTo { .. }
        ));
    }

    #[test]
    fn undecidable_candidate_demands_refinement() {
        let bound = rat(1, 50_000_000);
        let values = [
            Rho0Value {
                value: rat(1, 1),
                error_bound: bound.clone(),
            },
            Rho0Value {
                value: rat(2, 1) + rat(1, 1_000_000),
                error_bound: bound,
            },
        ];
        let err = independence_certificate(&values, 20, &tau()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)), "got {err}");
    }

    #[test]
    fn sloppy_error_bounds_are_rejected_up_front() {
        let values = [Rho0Value {
            value: rat(-4, 3),
            error_bound: rat(1, 1_000_000),
        }];
        assert!(independence_certificate(&values, 20, &tau()).is_err());
    }

    #[test]
    fn oversized_search_box_is_refused() {
        let values = vec![Rho0Value::exact(rat(1, 1)); 7];
        assert!(independence_certificate(&values, 20, &tau()).is_err());
    }

    #[test]
    fn computed_twist_values_come_back_clean() {
        let tol = rat(1, 1_000_000_000);
        let values = [
            rho0_with_tolerance(&twist_knot(-2), &tol).unwrap(),
            rho0_with_tolerance(&twist_knot(-4), &tol).unwrap(),
        ];
        let cert = independence_certificate(&values, 20, &tau()).unwrap();
        assert!(matches!(
            cert.verdict(),
            RelationVerdict::NoRelationUpTo { .. }
        ));
        let again = independence_certificate(&values, 20, &tau()).unwrap();
        assert_eq!(cert.to_json(), again.to_json());
    }
}
