//! The rewrite engine for rho-invariant sequences of surgery descriptions.
//!
//! Every supported expression has an eventually constant sequence, stored as
//! a finite head plus the constant tail. Evaluation folds over the DAG:
//! trivial links contribute zero at every index, a knot contributes its rho0
//! at every index, an infection along a curve of derived depth d adds the
//! infecting knot's rho0 at the indices >= d and nothing below, and sums and
//! stacks add entrywise.

use crate::error::{Error, Result};
use crate::freegroup::{derived_depth, DerivedDepth};
use crate::infection::expr::{BoundaryLinkExpr, InfectionCurve, ManifoldExpr};
use crate::ratio::format_rational;
use crate::seifert::{rho0, rho0_with_tolerance, Rho0Value, SeifertMatrix};
use num::rational::BigRational;
use serde_json::{json, Value};
use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

/// An eventually constant sequence of rho values. The head is kept minimal:
/// a trailing entry equal to the tail is absorbed into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoVector {
    head: Vec<Rho0Value>,
    tail: Rho0Value,
}

impl RhoVector {
    pub fn constant(tail: Rho0Value) -> Self {
        RhoVector { head: vec![], tail }
    }

    pub fn zero() -> Self {
        RhoVector::constant(Rho0Value::zero())
    }

    pub fn head(&self) -> &[Rho0Value] {
        &self.head
    }

    pub fn tail(&self) -> &Rho0Value {
        &self.tail
    }

    /// The value at index n; the tail answers for every index past the head.
    pub fn entry(&self, n: usize) -> &Rho0Value {
        self.head.get(n).unwrap_or(&self.tail)
    }

    /// First index from which the sequence is constant.
    pub fn settled_from(&self) -> usize {
        self.head.len()
    }

    pub fn add(&self, other: &RhoVector) -> RhoVector {
        let len = self.head.len().max(other.head.len());
        let head = (0..len)
            .map(|i| self.entry(i).add(other.entry(i)))
            .collect();
        RhoVector {
            head,
            tail: self.tail.add(&other.tail),
        }
        .normalized()
    }

    /// Adds `inc` to every entry at index `from` and beyond.
    pub fn add_from(&self, from: usize, inc: &Rho0Value) -> RhoVector {
        let len = self.head.len().max(from);
        let head = (0..len)
            .map(|i| {
                if i >= from {
                    self.entry(i).add(inc)
                } else {
                    self.entry(i).clone()
                }
            })
            .collect();
        RhoVector {
            head,
            tail: self.tail.add(inc),
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        while self.head.last() == Some(&self.tail) {
            self.head.pop();
        }
        self
    }

    pub fn to_json(&self) -> Value {
        let entry = |v: &Rho0Value| {
            json!({
                "value": format_rational(&v.value),
                "error_bound": format_rational(&v.error_bound),
            })
        };
        json!({
            "head": self.head.iter().map(entry).collect::<Vec<_>>(),
            "tail": entry(&self.tail),
        })
    }
}

fn render_value(v: &Rho0Value) -> String {
    if v.is_exact() {
        format_rational(&v.value)
    } else {
        format!(
            "{} +- {}",
            format_rational(&v.value),
            format_rational(&v.error_bound)
        )
    }
}

impl fmt::Display for RhoVector {
    /// `(h0, h1, ...; tail)`; the part after the semicolon holds from the
    /// first settled index on.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.head.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", render_value(v))?;
        }
        write!(f, "; {})", render_value(&self.tail))
    }
}

/// Knobs for the rewrite engine.
#[derive(Debug, Clone)]
pub struct EvalOptions {
    /// Depth-search cutoff for curves. Depths up to this value are
    /// certified; a curve lying deeper aborts evaluation rather than
    /// guessing.
    pub max_depth: usize,
    /// Requested accuracy for each leaf rho0 computation; None keeps the
    /// default breakpoint refinement. Bounds add up across leaves.
    pub tolerance: Option<BigRational>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            max_depth: 4,
            tolerance: None,
        }
    }
}

/// Folds expressions, caching leaf rho0 values by Seifert matrix. The cache
/// takes concurrent readers behind a single-writer lock; losing an insert
/// race only means recomputing a deterministic value.
pub struct Evaluator {
    opts: EvalOptions,
    leaf_cache: RwLock<HashMap<SeifertMatrix, Rho0Value>>,
}

impl Evaluator {
    pub fn new(opts: EvalOptions) -> Self {
        Evaluator {
            opts,
            leaf_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn evaluate(&self, expr: &ManifoldExpr) -> Result<RhoVector> {
        expr.validate()?;
        self.eval_inner(expr)
    }

    pub fn evaluate_link(&self, link: &BoundaryLinkExpr) -> Result<RhoVector> {
        self.eval_inner(&link.to_manifold())
    }

    fn eval_inner(&self, expr: &ManifoldExpr) -> Result<RhoVector> {
        match expr {
            ManifoldExpr::TrivialLinkSurgery(_) => Ok(RhoVector::zero()),
            ManifoldExpr::KnotSurgery(v) => Ok(RhoVector::constant(self.leaf_rho0(v)?)),
            ManifoldExpr::Infect {
                base,
                eta,
                infecting,
            } => {
                let below = self.eval_inner(base)?;
                let depth = self.curve_depth(eta)?;
                Ok(below.add_from(depth, &self.leaf_rho0(infecting)?))
            }
            ManifoldExpr::ConnectedSum(l, r) => Ok(self.eval_inner(l)?.add(&self.eval_inner(r)?)),
            ManifoldExpr::BoundaryStack(links) => {
                let mut acc = RhoVector::zero();
                for link in links {
                    acc = acc.add(&self.eval_inner(&link.to_manifold())?);
                }
                Ok(acc)
            }
        }
    }

    pub fn curve_depth(&self, eta: &InfectionCurve) -> Result<usize> {
        match derived_depth(eta.word(), self.opts.max_depth) {
            DerivedDepth::Exact(d) => Ok(d),
            DerivedDepth::AtLeast(_) => Err(Error::DepthOverflow {
                curve: eta.word().to_string(),
                max_n: self.opts.max_depth,
            }),
            DerivedDepth::Identity => Err(Error::Precondition("trivial curve has no depth".into())),
        }
    }

    fn leaf_rho0(&self, v: &SeifertMatrix) -> Result<Rho0Value> {
        if let Some(hit) = self.leaf_cache.read().unwrap().get(v) {
            return Ok(hit.clone());
        }
        let computed = match &self.opts.tolerance {
            Some(tol) => rho0_with_tolerance(v, tol)?,
            None => rho0(v)?,
        };
        self.leaf_cache
            .write()
            .unwrap()
            .insert(v.clone(), computed.clone());
        Ok(computed)
    }
}

pub fn rho_vector(expr: &ManifoldExpr) -> Result<RhoVector> {
    rho_vector_with(expr, &EvalOptions::default())
}

pub fn rho_vector_with(expr: &ManifoldExpr, opts: &EvalOptions) -> Result<RhoVector> {
    Evaluator::new(opts.clone()).evaluate(expr)
}

/// The n-th entry of the sequence.
pub fn rho(expr: &ManifoldExpr, n: usize) -> Result<Rho0Value> {
    Ok(rho_vector(expr)?.entry(n).clone())
}

/// Outcome of scanning the sequence for an entry whose enclosure excludes
/// zero. `Inconclusive` only means no entry obstructed; it never asserts
/// sliceness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SliceVerdict {
    Obstructed { index: usize, value: Rho0Value },
    Inconclusive,
}

impl SliceVerdict {
    pub fn to_json(&self) -> Value {
        match self {
            SliceVerdict::Obstructed { index, value } => json!({
                "verdict": "obstructed",
                "index": index,
                "value": format_rational(&value.value),
                "error_bound": format_rational(&value.error_bound),
            }),
            SliceVerdict::Inconclusive => json!({"verdict": "inconclusive"}),
        }
    }
}

pub fn slice_obstruction(expr: &ManifoldExpr) -> Result<SliceVerdict> {
    slice_obstruction_with(expr, &EvalOptions::default())
}

pub fn slice_obstruction_with(expr: &ManifoldExpr, opts: &EvalOptions) -> Result<SliceVerdict> {
    let v = rho_vector_with(expr, opts)?;
    for (index, value) in v.head().iter().enumerate() {
        if value.excludes_zero() {
            return Ok(SliceVerdict::Obstructed {
                index,
                value: value.clone(),
            });
        }
    }
    if v.tail().excludes_zero() {
        return Ok(SliceVerdict::Obstructed {
            index: v.settled_from(),
            value: v.tail().clone(),
        });
    }
    Ok(SliceVerdict::Inconclusive)
}
