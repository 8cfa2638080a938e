//! Seifert matrices and the invariants that only need polynomial arithmetic.

use crate::error::{Error, Result};
use crate::seifert::poly::IntPoly;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// An integer 2g x 2g matrix V with det(V - V^T) = 1. The empty matrix is
/// the unknot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl SeifertMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let size = rows.len();
        for r in &rows {
            if r.len() != size {
                return Err(Error::InvalidSeifertMatrix(format!(
                    "expected {size} columns, found a row with {}",
                    r.len()
                )));
            }
        }
        if !size.is_multiple_of(2) {
            return Err(Error::InvalidSeifertMatrix(format!("size {size} is odd")));
        }
        let entries: Vec<i64> = rows.into_iter().flatten().collect();
        let m = SeifertMatrix { size, entries };
        let mut skew = vec![vec![BigInt::zero(); size]; size];
        for (i, row) in skew.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = BigInt::from(m.entry(i, j) - m.entry(j, i));
            }
        }
        let det = bareiss_det(skew);
        if !det.is_one() {
            return Err(Error::InvalidSeifertMatrix(format!(
                "det(V - V^T) = {det}, want 1"
            )));
        }
        Ok(m)
    }

    pub fn unknot() -> Self {
        SeifertMatrix {
            size: 0,
            entries: vec![],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn genus(&self) -> usize {
        self.size / 2
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Block sum; the matrix of the connected sum of the two knots.
    pub fn connected_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let n = self.size + other.size;
        let mut entries = vec![0i64; n * n];
        for i in 0..self.size {
            for j in 0..self.size {
                entries[i * n + j] = self.entry(i, j);
            }
        }
        for i in 0..other.size {
            for j in 0..other.size {
                entries[(self.size + i) * n + (self.size + j)] = other.entry(i, j);
            }
        }
        SeifertMatrix { size: n, entries }
    }

    /// Matrix of the mirror image: -V^T.
    pub fn mirror(&self) -> SeifertMatrix {
        let n = self.size;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = -self.entry(j, i);
            }
        }
        SeifertMatrix { size: n, entries }
    }

    /// det(V - t V^T), normalized so the lowest exponent is 0 and the
    /// leading coefficient is positive. Degree is even and the coefficient
    /// sequence is palindromic; evaluation at 1 gives +-1.
    pub fn alexander_polynomial(&self) -> IntPoly {
        if self.size == 0 {
            return IntPoly::from_i64(&[1]);
        }
        let n = self.size;
        // Interpolate the degree <= n determinant from n+1 integer samples.
        let xs: Vec<i64> = (0..=n as i64).collect();
        let ys: Vec<BigInt> = xs
            .iter()
            .map(|&t| {
                let mat: Vec<Vec<BigInt>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                BigInt::from(self.entry(i, j))
                                    - BigInt::from(t) * BigInt::from(self.entry(j, i))
                            })
                            .collect()
                    })
                    .collect();
                bareiss_det(mat)
            })
            .collect();
        let poly = lagrange_interpolate(&xs, &ys);
        let (_, mut p) = poly.strip_zero_roots();
        if p.leading().is_negative() {
            p = p.neg();
        }
        debug_assert!(is_palindromic(&p), "Alexander coefficients not palindromic");
        p
    }

    /// Arf invariant, read off from the determinant: 0 exactly when the
    /// Alexander polynomial at -1 is congruent to +-1 mod 8.
    pub fn arf_invariant(&self) -> u8 {
        let v = self.alexander_polynomial().eval_int(&BigInt::from(-1));
        let r = v.mod_floor(&BigInt::from(8));
        if r == BigInt::one() || r == BigInt::from(7) {
            0
        } else {
            1
        }
    }
}

use num::Integer;

fn is_palindromic(p: &IntPoly) -> bool {
    let c = &p.coeffs;
    (0..c.len()).all(|i| c[i] == c[c.len() - 1 - i])
}

/// Fraction-free determinant (Bareiss). Exact over the integers.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut denom = BigInt::one();
    let mut sign = 1i32;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &num / &denom;
            }
        }
        denom = m[k][k].clone();
    }
    if sign < 0 {
        -m[n - 1][n - 1].clone()
    } else {
        m[n - 1][n - 1].clone()
    }
}

fn lagrange_interpolate(xs: &[i64], ys: &[BigInt]) -> IntPoly {
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); xs.len()];
    for (j, y) in ys.iter().enumerate() {
        // L_j(t) = prod_{k != j} (t - x_k) / (x_j - x_k)
        let mut numer = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (k, &xk) in xs.iter().enumerate() {
            if k == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); numer.len() + 1];
            for (i, c) in numer.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * BigRational::from_integer(BigInt::from(xk));
            }
            numer = next;
            denom *= BigRational::from_integer(BigInt::from(xs[j] - xk));
        }
        let scale = BigRational::from_integer(y.clone()) / denom;
        for (i, c) in numer.iter().enumerate() {
            acc[i] += c * &scale;
        }
    }
    let coeffs: Vec<BigInt> = acc
        .iter()
        .map(|c| {
            assert!(c.denom().is_one(), "interpolation yielded a non-integer");
            c.numer().clone()
        })
        .collect();
    IntPoly::from_coeffs(coeffs)
}
