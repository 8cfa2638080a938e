//! Working representation of free solvable quotients.
//!
//! Level 1 is the abelianization. A level n element is a pair: its image
//! one level down (the shadow) together with one group-ring coefficient
//! vector over the level n-1 quotient, one slot per generator. Multiplying
//! translates the right vector by the left shadow; a word maps to the
//! identity at level n exactly when it lies in the n-th derived subgroup.

use crate::freegroup::ring::GroupRing;
use crate::freegroup::word::FreeWord;
use num::bigint::BigInt;
use num::{One, Zero};
use serde_json::{json, Value};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SolvableElement {
    Abelian(Vec<BigInt>),
    Magnus {
        shadow: Box<SolvableElement>,
        vector: Vec<GroupRing<SolvableElement>>,
    },
}

impl SolvableElement {
    pub fn identity(level: usize, gens: usize) -> Self {
        assert!(level >= 1);
        if level == 1 {
            SolvableElement::Abelian(vec![BigInt::zero(); gens])
        } else {
            SolvableElement::Magnus {
                shadow: Box::new(SolvableElement::identity(level - 1, gens)),
                vector: vec![GroupRing::zero(); gens],
            }
        }
    }

    pub fn of_letter(gen: u32, sign: i8, level: usize, gens: usize) -> Self {
        assert!(gen >= 1 && (gen as usize) <= gens, "letter out of range");
        assert!(sign == 1 || sign == -1);
        if level == 1 {
            let mut e = vec![BigInt::zero(); gens];
            e[(gen - 1) as usize] = BigInt::from(sign);
            return SolvableElement::Abelian(e);
        }
        let shadow = SolvableElement::of_letter(gen, sign, level - 1, gens);
        let mut vector = vec![GroupRing::zero(); gens];
        if sign == 1 {
            vector[(gen - 1) as usize] =
                GroupRing::single(SolvableElement::identity(level - 1, gens), BigInt::one());
        } else {
            vector[(gen - 1) as usize] = GroupRing::single(shadow.clone(), -BigInt::one());
        }
        SolvableElement::Magnus {
            shadow: Box::new(shadow),
            vector,
        }
    }

    pub fn level(&self) -> usize {
        match self {
            SolvableElement::Abelian(_) => 1,
            SolvableElement::Magnus { shadow, .. } => shadow.level() + 1,
        }
    }

    pub fn gens(&self) -> usize {
        match self {
            SolvableElement::Abelian(e) => e.len(),
            SolvableElement::Magnus { vector, .. } => vector.len(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            SolvableElement::Abelian(e) => e.iter().all(|c| c.is_zero()),
            SolvableElement::Magnus { shadow, vector } => {
                shadow.is_identity() && vector.iter().all(|r| r.is_zero())
            }
        }
    }

    pub fn mul(&self, other: &SolvableElement) -> SolvableElement {
        match (self, other) {
            (SolvableElement::Abelian(a), SolvableElement::Abelian(b)) => {
                SolvableElement::Abelian(a.iter().zip(b.iter()).map(|(x, y)| x + y).collect())
            }
            (
                SolvableElement::Magnus {
                    shadow: s,
                    vector: a,
                },
                SolvableElement::Magnus {
                    shadow: t,
                    vector: b,
                },
            ) => SolvableElement::Magnus {
                shadow: Box::new(s.mul(t)),
                vector: a
                    .iter()
                    .zip(b.iter())
                    .map(|(ai, bi)| ai.add(&bi.map_keys(|g| s.mul(g))))
                    .collect(),
            },
            _ => panic!("level mismatch in solvable multiplication"),
        }
    }

    pub fn inverse(&self) -> SolvableElement {
        match self {
            SolvableElement::Abelian(a) => SolvableElement::Abelian(a.iter().map(|x| -x).collect()),
            SolvableElement::Magnus { shadow, vector } => {
                let si = shadow.inverse();
                SolvableElement::Magnus {
                    vector: vector
                        .iter()
                        .map(|ai| ai.map_keys(|g| si.mul(g)).neg())
                        .collect(),
                    shadow: Box::new(si),
                }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SolvableElement::Abelian(e) => json!({
                "level": 1,
                "exponents": e.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            }),
            SolvableElement::Magnus { shadow, vector } => json!({
                "level": self.level(),
                "shadow": shadow.to_json(),
                "vector": vector
                    .iter()
                    .map(|r| {
                        r.terms()
                            .map(|(g, c)| json!({"at": g.to_json(), "coeff": c.to_string()}))
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>(),
            }),
        }
    }
}

/// Image of a word in the level-n solvable quotient of the free group on
/// `gens` generators.
pub fn project(w: &FreeWord, level: usize, gens: usize) -> SolvableElement {
    assert!(
        w.max_generator() as usize <= gens,
        "word uses a generator beyond the chosen rank"
    );
    let mut acc = SolvableElement::identity(level, gens);
    for &(i, s) in w.letters() {
        acc = acc.mul(&SolvableElement::of_letter(i, s, level, gens));
    }
    acc
}

/// Position of a word in the derived series, as far as level `max_n`
/// projections can see.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivedDepth {
    /// The word reduces to the identity.
    Identity,
    /// Lies in the depth-th derived subgroup but not the next one.
    Exact(usize),
    /// Lies in the n-th derived subgroup; deeper levels were not probed.
    AtLeast(usize),
}

impl DerivedDepth {
    /// The depth witnessed, when the word is not the identity.
    pub fn witnessed(&self) -> Option<usize> {
        match self {
            DerivedDepth::Identity => None,
            DerivedDepth::Exact(d) | DerivedDepth::AtLeast(d) => Some(*d),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DerivedDepth::Exact(_))
    }
}

impl fmt::Display for DerivedDepth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivedDepth::Identity => write!(f, "identity"),
            DerivedDepth::Exact(d) => write!(f, "{d}"),
            DerivedDepth::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

/// Finds the first level whose projection is nontrivial. A word surviving
/// to level n sits in the (n-1)-st derived subgroup, so probing one level
/// past `max_n` certifies every depth up to and including `max_n`; only
/// words lying deeper than that come back as a lower bound.
pub fn derived_depth(w: &FreeWord, max_n: usize) -> DerivedDepth {
    assert!(max_n >= 1);
    if w.is_identity() {
        return DerivedDepth::Identity;
    }
    let gens = w.max_generator() as usize;
    for n in 1..=max_n + 1 {
        if !project(w, n, gens).is_identity() {
            return DerivedDepth::Exact(n - 1);
        }
    }
    DerivedDepth::AtLeast(max_n + 1)
}
