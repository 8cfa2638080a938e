//! Integer group rings with canonical (zero-free, ordered) term maps.

use num::bigint::BigInt;
use num::Zero;
use std::collections::BTreeMap;

/// A finite integer combination of group elements. Terms with zero
/// coefficient are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct GroupRing<G: Ord + Clone> {
    terms: BTreeMap<G, BigInt>,
}

impl<G: Ord + Clone> GroupRing<G> {
    pub fn zero() -> Self {
        GroupRing {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(g: G, c: BigInt) -> Self {
        let mut r = GroupRing::zero();
        r.add_term(g, c);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&G, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &G) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, g: G, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(g);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRing {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return GroupRing::zero();
        }
        GroupRing {
            terms: self.terms.iter().map(|(g, c)| (g.clone(), c * k)).collect(),
        }
    }

    /// Applies a group translation to every term key.
    pub fn map_keys(&self, f: impl Fn(&G) -> G) -> Self {
        let mut out = GroupRing::zero();
        for (g, c) in self.terms() {
            out.add_term(f(g), c.clone());
        }
        out
    }

    /// Convolution product with the given group multiplication.
    pub fn mul_with(&self, other: &Self, mul: impl Fn(&G, &G) -> G) -> Self {
        let mut out = GroupRing::zero();
        for (g, a) in self.terms() {
            for (h, b) in other.terms() {
                out.add_term(mul(g, h), a * b);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_terms_are_dropped() {
        let mut r: GroupRing<i32> = GroupRing::zero();
        r.add_term(3, BigInt::from(5));
        r.add_term(3, BigInt::from(-5));
        assert!(r.is_zero());
        r.add_term(1, BigInt::from(2));
        assert_eq!(r.add(&r.neg()), GroupRing::zero());
    }

    #[test]
    fn convolution_over_integers() {
        // model Z as the group: mul = addition of keys
        let a = GroupRing::single(0, BigInt::from(1)).add(&GroupRing::single(1, BigInt::from(2)));
        let b = GroupRing::single(1, BigInt::from(3));
        let p = a.mul_with(&b, |x, y| x + y);
        assert_eq!(p.coeff(&1), BigInt::from(3));
        assert_eq!(p.coeff(&2), BigInt::from(6));
    }
}
