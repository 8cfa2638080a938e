//! Exact inertia of symmetric matrices over the quadratic field Q(sqrt(d)).
//!
//! Signature values of the symmetrized Seifert form are sampled at points
//! omega = (x + i*sqrt(4-x^2))/2 on the unit circle with x rational. The
//! Hermitian form there lives over Q(sqrt(4-x^2)), and its real doubling is
//! a symmetric matrix over the same field, so counting pivot signs of an
//! exact congruence reduction gives the signature with no rounding at all.

use num::rational::BigRational;
use num::{Signed, Zero};

/// a + b*sqrt(d). The radicand is carried by context, not by the element;
/// the arithmetic is valid whether or not d is a perfect square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadRat {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadRat {
    pub fn zero() -> Self {
        QuadRat {
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadRat {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn radical(b: BigRational) -> Self {
        QuadRat {
            a: BigRational::zero(),
            b,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadRat {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadRat {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    pub fn mul(&self, o: &Self, d: &BigRational) -> Self {
        QuadRat {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn div(&self, o: &Self, d: &BigRational) -> Self {
        let norm = &o.a * &o.a - &o.b * &o.b * d;
        assert!(!norm.is_zero(), "division by zero in Q(sqrt(d))");
        let conj = QuadRat {
            a: o.a.clone(),
            b: -o.b.clone(),
        };
        let num = self.mul(&conj, d);
        QuadRat {
            a: num.a / &norm,
            b: num.b / &norm,
        }
    }

    /// Sign of a + b*sqrt(d) for d >= 0, decided by comparing a^2 and b^2 d
    /// when the two halves disagree.
    pub fn sign(&self, d: &BigRational) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || d.is_zero() {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * d;
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }
}

fn sign_of(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Inertia (positives, negatives) of a symmetric matrix over Q(sqrt(d)),
/// by exact symmetric congruence reduction. Returns None if the matrix is
/// singular (a zero Schur block of positive size shows up).
pub fn inertia(mut m: Vec<Vec<QuadRat>>, d: &BigRational) -> Option<(usize, usize)> {
    let n = m.len();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut pos = 0;
    let mut neg = 0;
    while !alive.is_empty() {
        // Prefer a nonzero diagonal pivot.
        let pivot = alive.iter().position(|&i| !m[i][i].is_zero());
        let pi = match pivot {
            Some(p) => alive[p],
            None => {
                // All diagonal entries vanish: fold one row into another to
                // surface a pivot. The congruence e_i -> e_i + e_j turns the
                // (i, i) entry into 2 m[i][j].
                let mut found = None;
                'outer: for (ai, &i) in alive.iter().enumerate() {
                    for &j in alive.iter().skip(ai + 1) {
                        if !m[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let (i, j) = found?;
                let row_j = m[j].clone();
                for (cell, t) in m[i].iter_mut().zip(&row_j) {
                    *cell = cell.add(t);
                }
                for row in m.iter_mut() {
                    let t = row[j].clone();
                    row[i] = row[i].add(&t);
                }
                i
            }
        };
        let p = m[pi][pi].clone();
        match p.sign(d) {
            1 => pos += 1,
            -1 => neg += 1,
            _ => unreachable!("pivot is nonzero"),
        }
        alive.retain(|&i| i != pi);
        // Schur complement on the remaining indices.
        let row: Vec<QuadRat> = (0..n).map(|k| m[pi][k].clone()).collect();
        for &r in &alive {
            if row[r].is_zero() {
                continue;
            }
            let f = row[r].div(&p, d);
            for &c in &alive {
                let t = f.mul(&row[c], d);
                m[r][c] = m[r][c].sub(&t);
            }
        }
    }
    Some((pos, neg))
}
