//! Free differential calculus on the integral group ring of a free group.

use crate::freegroup::ring::GroupRing;
use crate::freegroup::word::FreeWord;
use num::bigint::BigInt;
use num::One;

pub type FreeGroupRing = GroupRing<FreeWord>;

/// The derivative with respect to x_i, characterized by d(x_i) = 1,
/// d(x_i^-1) = -x_i^-1, and the product rule d(uv) = d(u) + u d(v).
pub fn fox_derivative(w: &FreeWord, i: u32) -> FreeGroupRing {
    let mut out = FreeGroupRing::zero();
    let mut prefix = FreeWord::identity();
    for &(j, s) in w.letters() {
        let letter = if s == 1 {
            FreeWord::generator(j)
        } else {
            FreeWord::generator(j).inverse()
        };
        if j == i {
            if s == 1 {
                out.add_term(prefix.clone(), BigInt::one());
            } else {
                out.add_term(prefix.mul(&letter), -BigInt::one());
            }
        }
        prefix = prefix.mul(&letter);
    }
    out
}

/// sum_i d_i(w) (x_i - 1), which the product rule forces to equal w - 1.
pub fn fundamental_identity_lhs(w: &FreeWord) -> FreeGroupRing {
    let mut acc = FreeGroupRing::zero();
    for i in 1..=w.max_generator() {
        let d = fox_derivative(w, i);
        let xi = FreeGroupRing::single(FreeWord::generator(i), BigInt::one());
        let one = FreeGroupRing::single(FreeWord::identity(), BigInt::one());
        let factor = xi.sub(&one);
        acc = acc.add(&d.mul_with(&factor, |a, b| a.mul(b)));
    }
    acc
}

pub fn fundamental_identity_holds(w: &FreeWord) -> bool {
    let rhs = FreeGroupRing::single(w.clone(), BigInt::one())
        .sub(&FreeGroupRing::single(FreeWord::identity(), BigInt::one()));
    fundamental_identity_lhs(w) == rhs
}
