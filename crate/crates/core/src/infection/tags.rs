//! Filtration bookkeeping. Infections of trivial links earn solvability
//! and grope-height tags from the depth of their curves and the Arf
//! invariants of their knots; everything else stays untagged. Absence of a
//! tag means "no rule applied", never "known to fail".
//!
//! The vanishing audit then cross-checks the tags against the rho engine:
//! a manifold tagged solvable to degree n must have zero entries strictly
//! below index n.

use crate::error::{Error, Result};
use crate::infection::expr::{BoundaryLinkExpr, ManifoldExpr};
use crate::infection::rho::{rho_vector_with, EvalOptions, Evaluator};
use crate::ratio::format_rational;
use crate::seifert::Rho0Value;
use serde_json::{json, Value};
use std::fmt;

/// A certified filtration level: a concrete degree, or every degree at once
/// (carried by split objects such as the trivial link).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeBound {
    Finite(usize),
    Unbounded,
}

impl DegreeBound {
    pub fn min_with(self, other: DegreeBound) -> DegreeBound {
        match (self, other) {
            (DegreeBound::Unbounded, x) | (x, DegreeBound::Unbounded) => x,
            (DegreeBound::Finite(a), DegreeBound::Finite(b)) => DegreeBound::Finite(a.min(b)),
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            DegreeBound::Finite(n) => Some(n),
            DegreeBound::Unbounded => None,
        }
    }
}

impl fmt::Display for DegreeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeBound::Finite(n) => write!(f, "{n}"),
            DegreeBound::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// Inferred filtration levels plus the trail of rules that set them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FiltrationTags {
    pub solvable_degree: Option<DegreeBound>,
    pub grope_height: Option<DegreeBound>,
    pub notes: Vec<String>,
}

impl FiltrationTags {
    fn untagged(note: String) -> Self {
        FiltrationTags {
            solvable_degree: None,
            grope_height: None,
            notes: vec![note],
        }
    }

    pub fn to_json(&self) -> Value {
        let deg = |d: &Option<DegreeBound>| match d {
            Some(b) => json!(b.to_string()),
            None => Value::Null,
        };
        json!({
            "solvable_degree": deg(&self.solvable_degree),
            "grope_height": deg(&self.grope_height),
            "notes": self.notes,
        })
    }
}

/// Minimum of two optional bounds; an untagged side poisons the result,
/// since the combined object is only known to sit where both pieces do.
fn combine(a: Option<DegreeBound>, b: Option<DegreeBound>) -> Option<DegreeBound> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min_with(y)),
        _ => None,
    }
}

pub fn infer_tags(expr: &ManifoldExpr) -> Result<FiltrationTags> {
    infer_tags_with(expr, &EvalOptions::default())
}

pub fn infer_tags_with(expr: &ManifoldExpr, opts: &EvalOptions) -> Result<FiltrationTags> {
    expr.validate()?;
    let eval = Evaluator::new(opts.clone());
    tags_inner(expr, &eval)
}

fn tags_inner(expr: &ManifoldExpr, eval: &Evaluator) -> Result<FiltrationTags> {
    match expr {
        ManifoldExpr::TrivialLinkSurgery(m) => Ok(FiltrationTags {
            solvable_degree: Some(DegreeBound::Unbounded),
            grope_height: Some(DegreeBound::Unbounded),
            notes: vec![format!(
                "{m}-component trivial link is slice; both filtrations hold at every level"
            )],
        }),
        ManifoldExpr::KnotSurgery(_) => Ok(FiltrationTags::untagged(
            "no inference rule covers a bare knot surgery".into(),
        )),
        ManifoldExpr::Infect {
            base,
            eta,
            infecting,
        } => {
            let below = tags_inner(base, eval)?;
            let depth = eval.curve_depth(eta)?;
            let arf = infecting.arf_invariant();
            let mut notes = below.notes;

            let mut solvable = None;
            if arf == 0 {
                solvable = Some(DegreeBound::Finite(depth));
                notes.push(format!(
                    "curve {eta} at depth {depth} with an Arf 0 knot keeps degree {depth} solvability"
                ));
            } else {
                notes.push(format!(
                    "Arf invariant 1 of the knot at curve {eta} blocks the solvability rule"
                ));
            }
            let height = depth + 1;
            let grope = Some(DegreeBound::Finite(height));
            notes.push(format!(
                "curve {eta} at depth {depth} gives grope height {height}"
            ));
            // A grope certifies solvability two levels down, but only from
            // height 3 up; at height 2 the Arf condition is still the only
            // route to a solvability tag.
            if height >= 3 && solvable.is_none() {
                solvable = Some(DegreeBound::Finite(height - 2));
                notes.push(format!(
                    "grope height {height} promotes to degree {} solvability",
                    height - 2
                ));
            }
            notes.push(format!(
                "curve {eta} assumed to bound a disk in the ambient sphere (caller assertion)"
            ));

            Ok(FiltrationTags {
                solvable_degree: combine(below.solvable_degree, solvable),
                grope_height: combine(below.grope_height, grope),
                notes,
            })
        }
        ManifoldExpr::ConnectedSum(l, r) => {
            let a = tags_inner(l, eval)?;
            let b = tags_inner(r, eval)?;
            let mut notes = a.notes;
            notes.extend(b.notes);
            notes.push("summands combined by minimum".into());
            Ok(FiltrationTags {
                solvable_degree: combine(a.solvable_degree, b.solvable_degree),
                grope_height: combine(a.grope_height, b.grope_height),
                notes,
            })
        }
        ManifoldExpr::BoundaryStack(links) => {
            let mut acc: Option<FiltrationTags> = None;
            for link in links {
                let t = tags_inner(&link.to_manifold(), eval)?;
                acc = Some(match acc {
                    None => t,
                    Some(prev) => {
                        let mut notes = prev.notes;
                        notes.extend(t.notes);
                        FiltrationTags {
                            solvable_degree: combine(prev.solvable_degree, t.solvable_degree),
                            grope_height: combine(prev.grope_height, t.grope_height),
                            notes,
                        }
                    }
                });
            }
            let mut tags = acc.expect("stacks are nonempty after validation");
            tags.notes.push(format!(
                "stack of {} links combined by minimum",
                links.len()
            ));
            Ok(tags)
        }
    }
}

/// Convenience for link-level tagging.
pub fn infer_link_tags(link: &BoundaryLinkExpr, opts: &EvalOptions) -> Result<FiltrationTags> {
    infer_tags_with(&link.to_manifold(), opts)
}

/// One line of the vanishing audit.
#[derive(Debug, Clone)]
pub struct VanishingCheck {
    pub index: usize,
    pub value: Rho0Value,
    pub passed: bool,
}

/// Outcome of auditing an expression against its solvability tag. Any
/// failed line means the tag rules and the rewrite engine disagree, which
/// is a bug in this crate, not a fact about the input.
#[derive(Debug, Clone)]
pub struct VanishingReport {
    pub degree: DegreeBound,
    pub checks: Vec<VanishingCheck>,
}

impl VanishingReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "solvable_degree": self.degree.to_string(),
            "all_passed": self.all_passed(),
            "checks": self
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "index": c.index,
                        "value": format_rational(&c.value.value),
                        "error_bound": format_rational(&c.value.error_bound),
                        "passed": c.passed,
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

pub fn check_vanishing(expr: &ManifoldExpr) -> Result<VanishingReport> {
    check_vanishing_with(expr, &EvalOptions::default())
}

pub fn check_vanishing_with(expr: &ManifoldExpr, opts: &EvalOptions) -> Result<VanishingReport> {
    let tags = infer_tags_with(expr, opts)?;
    let degree = tags.solvable_degree.ok_or_else(|| {
        Error::Precondition("no solvability tag was inferred; nothing to audit".into())
    })?;
    let v = rho_vector_with(expr, opts)?;
    // For a finite degree n the entries 0..n must vanish. An unbounded tag
    // must see an all-zero sequence; the tail entry answers for every index
    // past the head.
    let upto = match degree {
        DegreeBound::Finite(n) => n,
        DegreeBound::Unbounded => v.settled_from() + 1,
    };
    let checks = (0..upto)
        .map(|index| {
            let value = v.entry(index).clone();
            let passed = !value.excludes_zero();
            VanishingCheck {
                index,
                value,
                passed,
            }
        })
        .collect();
    Ok(VanishingReport { degree, checks })
}
