//! Laurent-polynomial test for membership in the second derived subgroup.
//!
//! A word lies in [F', F'] exactly when every exponent sum vanishes and
//! every derivative, pushed down to the abelianization Z[t1^+-, ...],
//! vanishes too. This file keeps its own multivariate arithmetic and its
//! own derivative walk so the check shares nothing with the quotient
//! machinery it corroborates.

use crate::freegroup::word::FreeWord;
use num::bigint::BigInt;
use num::Zero;
use std::collections::BTreeMap;

/// Multivariate Laurent polynomial: monomial exponent vector -> coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_monomial(&mut self, exps: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }
}

/// Derivative with respect to x_i, with every group prefix collapsed to its
/// exponent vector. A positive letter contributes +t^prefix; a negative one
/// contributes -t^(prefix - e_i).
pub fn abelianized_derivative(w: &FreeWord, i: u32, vars: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let mut prefix = vec![0i64; vars];
    for &(j, s) in w.letters() {
        let jz = (j - 1) as usize;
        if j == i {
            if s == 1 {
                out.add_monomial(prefix.clone(), BigInt::from(1));
            } else {
                let mut e = prefix.clone();
                e[jz] -= 1;
                out.add_monomial(e, BigInt::from(-1));
            }
        }
        prefix[jz] += s as i64;
    }
    out
}

/// True when the word lies in the second derived subgroup [F', F'].
pub fn in_second_derived(w: &FreeWord) -> bool {
    let vars = w.max_generator() as usize;
    for i in 1..=vars as u32 {
        if w.exponent_sum(i) != 0 {
            return false;
        }
    }
    (1..=vars as u32).all(|i| abelianized_derivative(w, i, vars).is_zero())
}
