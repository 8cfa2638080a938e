//! Surgery-description DAGs: knots, trivial links, infections, connected
//! sums, and stacks of boundary string links.
//!
//! Every curve lives in the free group carried by its base: the meridians of
//! a trivial link, or the single meridian of a knot. Constructions with no
//! such tracked group (sums, stacks) cannot be infected directly; wrap the
//! pieces first. The constructors reject anything outside that discipline,
//! so a value built through them is always well formed; `validate` re-checks
//! expressions assembled by hand from the enum.

use crate::error::{Error, Result};
use crate::freegroup::FreeWord;
use crate::seifert::registry::knot_by_name;
use crate::seifert::SeifertMatrix;
use serde_json::{json, Value};

/// A curve word together with the caller's assertion that the curve bounds
/// an embedded disk in the ambient sphere. Nothing here verifies the
/// embedding; the assertion is recorded and surfaces in certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfectionCurve {
    word: FreeWord,
}

impl InfectionCurve {
    pub fn bounding_disk(word: FreeWord) -> Result<Self> {
        if word.is_identity() {
            return Err(Error::Precondition(
                "infection curve must be a nontrivial word".into(),
            ));
        }
        Ok(InfectionCurve { word })
    }

    pub fn word(&self) -> &FreeWord {
        &self.word
    }
}

impl std::fmt::Display for InfectionCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.word.fmt(f)
    }
}

/// Zero-surgery descriptions the rewrite engine understands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldExpr {
    /// Zero surgery on a knot.
    KnotSurgery(SeifertMatrix),
    /// Zero surgery on the m-component trivial link, m >= 1.
    TrivialLinkSurgery(usize),
    /// Cut out a neighborhood of the curve in the base and reglue the
    /// exterior of the infecting knot, exchanging meridian and longitude.
    Infect {
        base: Box<ManifoldExpr>,
        eta: InfectionCurve,
        infecting: SeifertMatrix,
    },
    ConnectedSum(Box<ManifoldExpr>, Box<ManifoldExpr>),
    /// Closure of a product of boundary string links on a common strand
    /// count.
    BoundaryStack(Vec<BoundaryLinkExpr>),
}

impl ManifoldExpr {
    pub fn knot(v: SeifertMatrix) -> ManifoldExpr {
        ManifoldExpr::KnotSurgery(v)
    }

    pub fn trivial_link(components: usize) -> Result<ManifoldExpr> {
        if components == 0 {
            return Err(Error::Precondition(
                "trivial link needs at least one component".into(),
            ));
        }
        Ok(ManifoldExpr::TrivialLinkSurgery(components))
    }

    /// Infection of `base` along `eta`. The base must carry a free meridian
    /// system and the curve must only use its generators; over a knot this
    /// confines eta to powers of the meridian x1.
    pub fn infect(
        base: ManifoldExpr,
        eta: FreeWord,
        infecting: SeifertMatrix,
    ) -> Result<ManifoldExpr> {
        let rank = base.tracked_rank().ok_or_else(|| {
            Error::Precondition(
                "infection base must be a trivial-link or knot surgery, possibly already infected"
                    .into(),
            )
        })?;
        let eta = InfectionCurve::bounding_disk(eta)?;
        let used = eta.word().max_generator() as usize;
        if used > rank {
            return Err(Error::Precondition(format!(
                "curve {} uses generator x{used} but the base carries {rank} meridian(s)",
                eta.word()
            )));
        }
        Ok(ManifoldExpr::Infect {
            base: Box::new(base),
            eta,
            infecting,
        })
    }

    pub fn connected_sum(left: ManifoldExpr, right: ManifoldExpr) -> ManifoldExpr {
        ManifoldExpr::ConnectedSum(Box::new(left), Box::new(right))
    }

    pub fn boundary_stack(links: Vec<BoundaryLinkExpr>) -> Result<ManifoldExpr> {
        if links.is_empty() {
            return Err(Error::Precondition("empty stack".into()));
        }
        let strands = links[0].strands();
        if let Some(bad) = links.iter().find(|l| l.strands() != strands) {
            return Err(Error::Precondition(format!(
                "stacked links must share a strand count: found {} and {}",
                strands,
                bad.strands()
            )));
        }
        Ok(ManifoldExpr::BoundaryStack(links))
    }

    /// Rank of the free meridian system this expression exposes to further
    /// infections, when it has one.
    pub fn tracked_rank(&self) -> Option<usize> {
        match self {
            ManifoldExpr::KnotSurgery(_) => Some(1),
            ManifoldExpr::TrivialLinkSurgery(m) => Some(*m),
            ManifoldExpr::Infect { base, .. } => base.tracked_rank(),
            ManifoldExpr::ConnectedSum(..) | ManifoldExpr::BoundaryStack(_) => None,
        }
    }

    /// Re-checks the constructor invariants on a hand-assembled expression.
    pub fn validate(&self) -> Result<()> {
        match self {
            ManifoldExpr::KnotSurgery(_) => Ok(()),
            ManifoldExpr::TrivialLinkSurgery(m) => {
                if *m == 0 {
                    Err(Error::Precondition(
                        "trivial link needs at least one component".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            ManifoldExpr::Infect { base, eta, .. } => {
                base.validate()?;
                let rank = base.tracked_rank().ok_or_else(|| {
                    Error::Precondition("infection over a base with no meridian system".into())
                })?;
                if eta.word().max_generator() as usize > rank {
                    return Err(Error::Precondition(format!(
                        "curve {} exceeds the base rank {rank}",
                        eta.word()
                    )));
                }
                Ok(())
            }
            ManifoldExpr::ConnectedSum(l, r) => {
                l.validate()?;
                r.validate()
            }
            ManifoldExpr::BoundaryStack(links) => {
                if links.is_empty() {
                    return Err(Error::Precondition("empty stack".into()));
                }
                if links.iter().any(|l| l.strands() != links[0].strands()) {
                    return Err(Error::Precondition(
                        "stacked links must share a strand count".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ManifoldExpr::KnotSurgery(v) => json!({"op": "knot", "matrix": v.rows()}),
            ManifoldExpr::TrivialLinkSurgery(m) => json!({"op": "trivial", "components": m}),
            ManifoldExpr::Infect {
                base,
                eta,
                infecting,
            } => json!({
                "op": "infect",
                "base": base.to_json(),
                "curve": eta.to_string(),
                "knot": infecting.rows(),
            }),
            ManifoldExpr::ConnectedSum(l, r) => json!({
                "op": "sum",
                "left": l.to_json(),
                "right": r.to_json(),
            }),
            ManifoldExpr::BoundaryStack(links) => json!({
                "op": "stack",
                "links": links.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<ManifoldExpr> {
        let op = field(v, "op")?
            .as_str()
            .ok_or_else(|| Error::Parse("\"op\" must be a string".into()))?;
        match op {
            "knot" => Ok(ManifoldExpr::knot(matrix_from_json(field(v, "matrix")?)?)),
            "trivial" => {
                let m = usize_from_json(field(v, "components")?)?;
                ManifoldExpr::trivial_link(m)
            }
            "infect" => {
                let base = ManifoldExpr::from_json(field(v, "base")?)?;
                let eta = word_from_json(field(v, "curve")?)?;
                let infecting = matrix_from_json(field(v, "knot")?)?;
                ManifoldExpr::infect(base, eta, infecting)
            }
            "sum" => Ok(ManifoldExpr::connected_sum(
                ManifoldExpr::from_json(field(v, "left")?)?,
                ManifoldExpr::from_json(field(v, "right")?)?,
            )),
            "stack" => {
                let arr = field(v, "links")?
                    .as_array()
                    .ok_or_else(|| Error::Parse("\"links\" must be an array".into()))?;
                let links = arr
                    .iter()
                    .map(BoundaryLinkExpr::from_json)
                    .collect::<Result<Vec<_>>>()?;
                ManifoldExpr::boundary_stack(links)
            }
            other => Err(Error::Parse(format!("unknown op {other:?}"))),
        }
    }
}

/// A trivial string link on `strands` strands, infected along a list of
/// curves; the closure is a boundary link because each infection happens
/// inside a ball that misses the spanning disks of the other components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryLinkExpr {
    strands: usize,
    infections: Vec<(InfectionCurve, SeifertMatrix)>,
}

impl BoundaryLinkExpr {
    pub fn new(strands: usize, infections: Vec<(FreeWord, SeifertMatrix)>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Precondition(
                "a string link needs at least one strand".into(),
            ));
        }
        let infections = infections
            .into_iter()
            .map(|(w, k)| {
                let curve = InfectionCurve::bounding_disk(w)?;
                if curve.word().max_generator() as usize > strands {
                    return Err(Error::Precondition(format!(
                        "curve {} exceeds the strand count {strands}",
                        curve.word()
                    )));
                }
                Ok((curve, k))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundaryLinkExpr {
            strands,
            infections,
        })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn infections(&self) -> &[(InfectionCurve, SeifertMatrix)] {
        &self.infections
    }

    /// Zero surgery on the closure. All linking numbers vanish, so this is
    /// the same as infecting the surgered trivial link curve by curve.
    pub fn to_manifold(&self) -> ManifoldExpr {
        let mut expr = ManifoldExpr::TrivialLinkSurgery(self.strands);
        for (curve, knot) in &self.infections {
            expr = ManifoldExpr::Infect {
                base: Box::new(expr),
                eta: curve.clone(),
                infecting: knot.clone(),
            };
        }
        expr
    }

    /// Reads a chain of infections over a trivial link back into link form.
    pub fn from_expr(expr: &ManifoldExpr) -> Result<Self> {
        let mut infections = vec![];
        let mut cur = expr;
        loop {
            match cur {
                ManifoldExpr::Infect {
                    base,
                    eta,
                    infecting,
                } => {
                    infections.push((eta.clone(), infecting.clone()));
                    cur = base;
                }
                ManifoldExpr::TrivialLinkSurgery(m) => {
                    infections.reverse();
                    return Ok(BoundaryLinkExpr {
                        strands: *m,
                        infections,
                    });
                }
                _ => {
                    return Err(Error::Precondition(
                        "expected a trivial link with infections".into(),
                    ))
                }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "strands": self.strands,
            "infections": self
                .infections
                .iter()
                .map(|(c, k)| json!({"curve": c.to_string(), "knot": k.rows()}))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let strands = usize_from_json(field(v, "strands")?)?;
        let arr = field(v, "infections")?
            .as_array()
            .ok_or_else(|| Error::Parse("\"infections\" must be an array".into()))?;
        let infections = arr
            .iter()
            .map(|item| {
                Ok((
                    word_from_json(field(item, "curve")?)?,
                    matrix_from_json(field(item, "knot")?)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        BoundaryLinkExpr::new(strands, infections)
    }
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
}

fn usize_from_json(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Parse(format!("expected a nonnegative integer, found {v}")))
}

fn word_from_json(v: &Value) -> Result<FreeWord> {
    let s = v
        .as_str()
        .ok_or_else(|| Error::Parse(format!("expected a word string, found {v}")))?;
    crate::freegroup::parse_word(s)
}

/// Accepts either a registry name or an explicit row array.
fn matrix_from_json(v: &Value) -> Result<SeifertMatrix> {
    if let Some(name) = v.as_str() {
        return knot_by_name(name);
    }
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected a matrix or knot name, found {v}")))?;
    let rows = arr
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .ok_or_else(|| Error::Parse(format!("matrix entry {x} is not an integer")))
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SeifertMatrix::new(rows)
}
