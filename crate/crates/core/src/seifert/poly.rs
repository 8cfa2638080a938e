//! Integer polynomials with exact real-root machinery: Sturm chains,
//! sign-based bisection, rational root extraction.
//!
//! Everything here is exact. Coefficients are `BigInt`, query points are
//! `BigRational`, and sign evaluations clear denominators so no rounding
//! ever happens.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

/// Dense polynomial over the integers, coefficients in ascending order.
/// The zero polynomial is the empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly { coeffs: vec![c] }.trimmed()
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
        .trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        IntPoly { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly { coeffs: out }.trimmed()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly { coeffs: out }.trimmed()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
        .trimmed()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        }
        .trimmed()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(x)` at a rational point, computed over the integers by
    /// clearing the denominator: sign of `sum c_i p^i q^(d-i)`.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let p = x.numer();
        let q = x.denom();
        let d = self.coeffs.len() - 1;
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        // Horner in p with a running power of q: acc_i = acc_{i-1} * p + c_i q^(d-i)
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if i == d {
                acc = c.clone();
            } else {
                qpow *= q;
                acc = acc * p + c * &qpow;
            }
        }
        match acc.sign() {
            num::bigint::Sign::Minus => -1,
            num::bigint::Sign::NoSign => 0,
            num::bigint::Sign::Plus => 1,
        }
    }

    /// Gcd of all coefficients, always nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divides out the content; keeps the leading sign.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Strips a factor of x^k, returning (k, quotient).
    pub fn strip_zero_roots(&self) -> (usize, Self) {
        let k = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        (
            k,
            IntPoly {
                coeffs: self.coeffs[k..].to_vec(),
            },
        )
    }

    /// Exact division by (den*x - num), i.e. deflation at the rational root
    /// num/den. Panics if the point is not actually a root.
    pub fn deflate_at(&self, root: &BigRational) -> Self {
        assert_eq!(self.sign_at(root), 0, "deflate_at called on a non-root");
        let num = root.numer();
        let den = root.denom();
        // Synthetic division over Q, then clear: Horner quotient q_i with
        // q_{d-1} = c_d / den and q_{i-1} = (c_i + num*q_i) / den.
        let d = self.coeffs.len() - 1;
        let mut q = vec![BigRational::zero(); d];
        let mut carry = BigRational::from_integer(self.coeffs[d].clone());
        for i in (1..=d).rev() {
            let qi = &carry / BigRational::from_integer(den.clone());
            q[i - 1] = qi.clone();
            carry = BigRational::from_integer(self.coeffs[i - 1].clone())
                + qi * BigRational::from_integer(num.clone());
        }
        let lcm = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly {
            coeffs: q.iter().map(|c| c.numer() * (&lcm / c.denom())).collect(),
        }
        .trimmed()
        .primitive()
    }
}

fn rat_div(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let mut rem = a.coeffs.clone();
    let db = b.coeffs.len() - 1;
    let lead = b.coeffs[db].clone();
    if rem.len() <= db {
        return (
            RatPoly { coeffs: vec![] },
            RatPoly { coeffs: rem }.trimmed(),
        );
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db && !rem.iter().all(|c| c.is_zero()) {
        let dr = rem.len() - 1;
        if rem[dr].is_zero() {
            rem.pop();
            continue;
        }
        let q = &rem[dr] / &lead;
        quot[dr - db] = q.clone();
        for i in 0..=db {
            let t = &b.coeffs[i] * &q;
            rem[dr - db + i] -= t;
        }
        rem.pop();
    }
    (
        RatPoly { coeffs: quot }.trimmed(),
        RatPoly { coeffs: rem }.trimmed(),
    )
}

#[derive(Debug, Clone)]
struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    fn from_int(p: &IntPoly) -> Self {
        RatPoly {
            coeffs: p
                .coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Clears denominators and divides by the content. The scalar applied is
    /// positive, so sign sequences are preserved.
    fn primitive_int(&self) -> IntPoly {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        }
        .primitive()
    }
}

/// Polynomial gcd over Q, returned as a primitive integer polynomial with
/// positive leading coefficient.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut f = RatPoly::from_int(a);
    let mut g = RatPoly::from_int(b);
    if f.is_zero() {
        return b.primitive();
    }
    while !g.is_zero() {
        let (_, r) = rat_div(&f, &g);
        f = g;
        g = r;
    }
    let mut out = f.primitive_int();
    if out.leading().is_negative() {
        out = out.neg();
    }
    out
}

/// p with repeated roots collapsed to simple ones: p / gcd(p, p').
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    let d = p.derivative();
    if d.is_zero() {
        return p.primitive();
    }
    let g = gcd(p, &d);
    if g.degree() == Some(0) {
        return p.primitive();
    }
    let (q, r) = rat_div(&RatPoly::from_int(p), &RatPoly::from_int(&g));
    debug_assert!(r.is_zero());
    q.primitive_int()
}

/// Sturm chain of a squarefree polynomial. Each member is kept primitive,
/// scaled only by positive constants so signs match the rational chain.
pub fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        if chain[n - 1].degree() == Some(0) {
            break;
        }
        let (_, r) = rat_div(
            &RatPoly::from_int(&chain[n - 2]),
            &RatPoly::from_int(&chain[n - 1]),
        );
        if r.is_zero() {
            break;
        }
        chain.push(r.primitive_int().neg());
    }
    chain
}

fn variations(chain: &[IntPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct roots in the half-open interval (lo, hi].
pub fn count_roots(chain: &[IntPoly], lo: &BigRational, hi: &BigRational) -> usize {
    variations(chain, lo) - variations(chain, hi)
}

/// A located real root: either hit exactly or trapped in an open interval
/// with a sign change across it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootLoc {
    Exact(BigRational),
    Interval(BigRational, BigRational),
}

impl RootLoc {
    pub fn lo(&self) -> BigRational {
        match self {
            RootLoc::Exact(x) => x.clone(),
            RootLoc::Interval(a, _) => a.clone(),
        }
    }

    pub fn hi(&self) -> BigRational {
        match self {
            RootLoc::Exact(x) => x.clone(),
            RootLoc::Interval(_, b) => b.clone(),
        }
    }

    pub fn midpoint(&self) -> BigRational {
        match self {
            RootLoc::Exact(x) => x.clone(),
            RootLoc::Interval(a, b) => (a + b) / BigRational::from_integer(BigInt::from(2)),
        }
    }

    pub fn width(&self) -> BigRational {
        match self {
            RootLoc::Exact(_) => BigRational::zero(),
            RootLoc::Interval(a, b) => b - a,
        }
    }
}

/// All rational roots of p, found by trial division over the divisors of the
/// outer coefficients. Returns the roots together with p deflated by them.
/// Falls back to an empty root list (full p) when the outer coefficients are
/// too large to factor quickly; the bisection path handles those roots.
pub fn rational_roots(p: &IntPoly) -> (Vec<BigRational>, IntPoly) {
    let mut roots = Vec::new();
    let (k, mut q) = p.strip_zero_roots();
    if k > 0 {
        roots.push(BigRational::zero());
    }
    if q.degree().is_none_or(|d| d == 0) {
        return (roots, q);
    }
    let (Some(cands_num), Some(cands_den)) =
        (small_divisors(&q.coeffs[0]), small_divisors(&q.leading()))
    else {
        return (roots, q);
    };
    let mut candidates: Vec<BigRational> = Vec::new();
    for n in &cands_num {
        for d in &cands_den {
            let r = BigRational::new(BigInt::from(*n), BigInt::from(*d));
            candidates.push(-r.clone());
            candidates.push(r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for c in candidates {
        while q.sign_at(&c) == 0 {
            q = q.deflate_at(&c);
            roots.push(c.clone());
            if q.degree().is_none_or(|d| d == 0) {
                roots.sort();
                roots.dedup();
                return (roots, q);
            }
        }
    }
    roots.sort();
    roots.dedup();
    (roots, q)
}

/// True when d divides p exactly over the rationals.
pub fn divides(d: &IntPoly, p: &IntPoly) -> bool {
    if d.is_zero() {
        return p.is_zero();
    }
    if p.is_zero() {
        return true;
    }
    let (_, rem) = rat_div(&RatPoly::from_int(p), &RatPoly::from_int(d));
    rem.is_zero()
}

/// Positive divisors, or None when |n| exceeds the trial division budget.
fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let m: u64 = n.abs().try_into().ok()?;
    if m == 0 {
        return None;
    }
    if m > 10u64.pow(15) {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            divs.push(d);
            if d != m / d {
                divs.push(m / d);
            }
        }
        d += 1;
        if d > 2_000_000 {
            // Budget exceeded: the remaining cofactor may be a large prime;
            // give up rather than stall.
            return None;
        }
    }
    divs.sort();
    Some(divs)
}

/// Isolates every real root of a squarefree p inside the open interval
/// (lo, hi), with p nonzero at both endpoints. Intervals are disjoint, each
/// holds exactly one root, and every interval is narrower than `width`.
pub fn isolate_roots(
    p: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
    width: &BigRational,
) -> Vec<RootLoc> {
    assert!(p.sign_at(lo) != 0 && p.sign_at(hi) != 0);
    let two = BigRational::from_integer(BigInt::from(2));
    let mut poly = p.clone();
    let mut exact: Vec<BigRational> = Vec::new();
    // A bisection point can land exactly on a root. Recording it and
    // deflating keeps every remaining root visible to the Sturm counts;
    // excluding a punctured neighbourhood instead can skip neighbours.
    let intervals = 'restart: loop {
        if poly.degree().is_none_or(|d| d == 0) {
            break Vec::new();
        }
        let chain = sturm_chain(&poly);
        let mut out: Vec<RootLoc> = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            let n = count_roots(&chain, &a, &b);
            if n == 0 {
                continue;
            }
            if n == 1 {
                match refine_bracket(&poly, a, b, width) {
                    RootLoc::Exact(r) => {
                        poly = poly.deflate_at(&r);
                        exact.push(r);
                        continue 'restart;
                    }
                    iv => out.push(iv),
                }
                continue;
            }
            let mid = (&a + &b) / &two;
            if poly.sign_at(&mid) == 0 {
                poly = poly.deflate_at(&mid);
                exact.push(mid);
                continue 'restart;
            }
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        break out;
    };
    let mut locs = intervals;
    locs.extend(exact.into_iter().map(RootLoc::Exact));
    locs.sort_by_key(|x| x.lo());
    locs
}

/// Narrows an interval known to hold exactly one simple root until it is
/// thinner than `width`, by sign bisection.
pub fn refine_bracket(
    p: &IntPoly,
    mut a: BigRational,
    mut b: BigRational,
    width: &BigRational,
) -> RootLoc {
    let two = BigRational::from_integer(BigInt::from(2));
    let sa = p.sign_at(&a);
    debug_assert!(sa != 0 && p.sign_at(&b) != 0 && sa != p.sign_at(&b));
    while &b - &a > *width {
        let mid = (&a + &b) / &two;
        let sm = p.sign_at(&mid);
        if sm == 0 {
            return RootLoc::Exact(mid);
        }
        if sm == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    RootLoc::Interval(a, b)
}

/// Display helper: renders with the given variable name, highest degree
/// first, in the usual human form ("t^2 - t + 1").
pub fn format_poly(p: &IntPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = if i == 0 {
            mag.to_string()
        } else {
            let pow = if i == 1 {
                var.to_string()
            } else {
                format!("{var}^{i}")
            };
            if mag.is_one() {
                pow
            } else {
                format!("{mag}*{pow}")
            }
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() {
                format!("-{body}")
            } else {
                body
            });
        } else {
            parts.push(format!(
                "{} {}",
                if c.is_negative() { "-" } else { "+" },
                body
            ));
        }
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat};

    #[test]
    fn arithmetic_basics() {
        let p = IntPoly::from_i64(&[1, -1, 1]); // t^2 - t + 1
        let q = IntPoly::from_i64(&[-1, 1]); // t - 1
        assert_eq!(p.mul(&q), IntPoly::from_i64(&[-1, 2, -2, 1]));
        assert_eq!(p.eval_int(&BigInt::from(-1)), BigInt::from(3));
        assert_eq!(p.sign_at(&rat(1, 2)), 1);
        assert_eq!(q.sign_at(&int(1)), 0);
    }

    #[test]
    fn sturm_counts_distinct_roots() {
        // (x-1)(x+1)x has 3 roots in (-2, 2)
        let p = IntPoly::from_i64(&[0, -1, 0, 1]);
        let chain = sturm_chain(&p);
        assert_eq!(count_roots(&chain, &int(-2), &int(2)), 3);
        assert_eq!(count_roots(&chain, &rat(1, 2), &int(2)), 1);
    }

    #[test]
    fn squarefree_collapses_multiplicity() {
        let p = IntPoly::from_i64(&[-1, 1]); // x - 1
        let p2 = p.mul(&p).mul(&IntPoly::from_i64(&[-3, 2])); // (x-1)^2 (2x-3)
        let sf = squarefree_part(&p2);
        assert_eq!(sf.degree(), Some(2));
        assert_eq!(sf.sign_at(&int(1)), 0);
        assert_eq!(sf.sign_at(&rat(3, 2)), 0);
    }

    #[test]
    fn rational_roots_deflate() {
        // 2x^3 - 3x^2 with roots 0, 0, 3/2
        let p = IntPoly::from_i64(&[0, 0, -3, 2]);
        let (roots, rest) = rational_roots(&p);
        assert_eq!(roots, vec![int(0), rat(3, 2)]);
        assert_eq!(rest.degree(), Some(0));
    }

    #[test]
    fn isolation_traps_sqrt2() {
        let p = IntPoly::from_i64(&[-2, 0, 1]); // x^2 - 2
        let locs = isolate_roots(&p, &int(-2), &int(2), &rat(1, 1 << 20));
        assert_eq!(locs.len(), 2);
        for loc in &locs {
            match loc {
                RootLoc::Interval(a, b) => {
                    assert!(b - a <= rat(1, 1 << 20));
                    let mid = loc.midpoint();
                    let v = crate::ratio::to_f64(&mid);
                    assert!((v.abs() - std::f64::consts::SQRT_2).abs() < 1e-5);
                }
                RootLoc::Exact(_) => panic!("sqrt(2) is not rational"),
            }
        }
    }

    #[test]
    fn isolation_finds_exact_dyadic_roots() {
        // (x-1)(2x-3)(x^2-3): 1 and 3/2 land on bisection points
        let p = IntPoly::from_i64(&[-1, 1])
            .mul(&IntPoly::from_i64(&[-3, 2]))
            .mul(&IntPoly::from_i64(&[-3, 0, 1]));
        let locs = isolate_roots(&p, &int(-2), &int(2), &rat(1, 1 << 16));
        assert_eq!(locs.len(), 4);
        let exact: Vec<_> = locs
            .iter()
            .filter_map(|l| match l {
                RootLoc::Exact(x) => Some(x.clone()),
                _ => None,
            })
            .collect();
        assert!(exact.contains(&int(1)));
        assert!(exact.contains(&rat(3, 2)));
    }

    #[test]
    fn poly_formatting() {
        let p = IntPoly::from_i64(&[1, -1, 1]);
        assert_eq!(format_poly(&p, "t"), "t^2 - t + 1");
        let q = IntPoly::from_i64(&[4, -7, 4]);
        assert_eq!(format_poly(&q, "t"), "4*t^2 - 7*t + 4");
    }
}
