//! Rigorous rational enclosures of pi, cos, sin, and arccos.
//!
//! All bounds are computed in scaled-integer arithmetic (value = m / 2^prec)
//! with explicit error accounting, so every returned interval is a true
//! enclosure. Nothing here trusts floating point: f64 only supplies Newton
//! seeds that are later verified exactly.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Euclid;
use num::{FromPrimitive, One, Signed, Zero};

fn pow2(prec: u32) -> BigInt {
    BigInt::one() << prec
}

fn scaled_to_rational(m: &BigInt, prec: u32) -> BigRational {
    BigRational::new(m.clone(), pow2(prec))
}

/// Nearest scaled integer to a rational: round(x * 2^prec).
fn to_scaled(x: &BigRational, prec: u32) -> BigInt {
    let s = x * BigRational::from_integer(pow2(prec));
    let twice = s.numer() * 2i32 + s.denom();
    twice.div_euclid(&(s.denom() * 2i32))
}

/// arctan(1/n) * 2^prec as (value, error) with |true - value| <= error.
fn atan_inv_scaled(n: u64, prec: u32) -> (BigInt, BigInt) {
    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut npow = BigInt::from(n);
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    let scale = pow2(prec);
    loop {
        let denom = &npow * BigInt::from(2 * k + 1);
        let term = &scale / &denom;
        if term.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        npow *= &n2;
        k += 1;
        assert!(k < 10_000, "arctan series failed to converge");
    }
    // one ulp of floor error per term plus a sub-ulp alternating tail
    (sum, BigInt::from(k + 2))
}

/// Rational bounds pi_lo < pi < pi_hi with hi - lo <= 2^-(prec-6).
pub fn pi_bounds(prec: u32) -> (BigRational, BigRational) {
    let work = prec + 16;
    let (a5, e5) = atan_inv_scaled(5, work);
    let (a239, e239) = atan_inv_scaled(239, work);
    let val = &a5 * 16 - &a239 * 4;
    let err = &e5 * 16 + &e239 * 4;
    (
        scaled_to_rational(&(&val - &err), work),
        scaled_to_rational(&(&val + &err), work),
    )
}

/// Shared Taylor evaluation for cos (even=true) and sin (even=false),
/// in scaled integers with per-term error propagation. Valid for |x| <= 8.
fn taylor_bounds(x: &BigRational, prec: u32, even: bool) -> (BigRational, BigRational) {
    assert!(x.abs() <= BigRational::from_integer(BigInt::from(8)));
    let work = prec + 24;
    let scale = pow2(work);
    let xs = to_scaled(x, work);
    // term_{k+1} = term_k * x^2 / ((d+1)(d+2)) where d is the current degree
    let x2 = &xs * &xs;
    let mut term = if even { scale.clone() } else { xs.abs() };
    let mut term_err = BigInt::from(2); // input rounding, conservatively
    let mut degree: u64 = if even { 0 } else { 1 };
    let mut sum = BigInt::zero();
    let mut err = BigInt::zero();
    let mut positive = true;
    loop {
        if positive {
            sum += &term;
        } else {
            sum -= &term;
        }
        err += &term_err + 1;
        let next_div = BigInt::from((degree + 1) * (degree + 2));
        let denom = &scale * &scale * &next_div;
        let next = (&term * &x2) / &denom;
        term_err = (&term_err * &x2) / &denom + 2;
        term = next;
        degree += 2;
        positive = !positive;
        if term.is_zero()
            && term_err <= BigInt::from(4)
            && BigInt::from(degree * degree) > (&x2 / &scale / &scale + 1) * 4
        {
            err += 4; // truncated tail, alternating and sub-ulp by now
            break;
        }
        assert!(degree < 400, "taylor series failed to converge");
    }
    let signed_sum = if !even && x.is_negative() { -sum } else { sum };
    (
        scaled_to_rational(&(&signed_sum - &err), work),
        scaled_to_rational(&(&signed_sum + &err), work),
    )
}

/// Rational enclosure of cos(x) for |x| <= 8.
pub fn cos_bounds(x: &BigRational, prec: u32) -> (BigRational, BigRational) {
    taylor_bounds(x, prec, true)
}

/// Rational enclosure of sin(x) for |x| <= 8.
pub fn sin_bounds(x: &BigRational, prec: u32) -> (BigRational, BigRational) {
    taylor_bounds(x, prec, false)
}

fn f64_rational(x: f64) -> BigRational {
    BigRational::from_f64(x).unwrap_or_else(BigRational::zero)
}

/// Rounds to a dyadic with `bits` fractional bits, keeping numbers small
/// between Newton iterations.
fn round_dyadic(x: &BigRational, bits: u32) -> BigRational {
    scaled_to_rational(&to_scaled(x, bits), bits)
}

/// Rational enclosure (lo, hi) of arccos(y) for y strictly inside (-1, 1),
/// with hi - lo <= width. lo >= 0 always; hi may exceed pi by a sliver when
/// y is close to -1, which is still a valid enclosure.
pub fn acos_bounds(y: &BigRational, width: &BigRational) -> (BigRational, BigRational) {
    let one = BigRational::one();
    assert!(y.abs() < one, "arccos argument must be inside (-1, 1)");
    let wf = crate::ratio::to_f64(width).max(1e-300);
    let mut prec: u32 = 64 + (-wf.log2()).max(0.0) as u32;
    let mut theta = f64_rational(crate::ratio::to_f64(y).clamp(-1.0, 1.0).acos());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for _ in 0..64 {
        let delta = width.clone() * &half;
        let mut lo = &theta - &delta;
        if lo.is_negative() {
            lo = BigRational::zero();
        }
        let hi = &theta + &delta;
        let (cl_lo, _cl_hi) = cos_bounds(&lo, prec);
        let (_ch_lo, ch_hi) = cos_bounds(&hi, prec);
        // cos decreasing on [0, pi]: cos(lo) > y > cos(hi) traps arccos(y).
        // Endpoints straying past pi stay valid: arccos(y) < pi < hi then.
        if (lo.is_zero() || cl_lo > *y) && ch_hi < *y {
            return (lo, hi);
        }
        // Newton polish: theta += (cos(theta) - y) / sin(theta)
        let (c_lo, c_hi) = cos_bounds(&theta, prec);
        let (s_lo, s_hi) = sin_bounds(&theta, prec);
        let c_mid = (&c_lo + &c_hi) * &half;
        let s_mid = (&s_lo + &s_hi) * &half;
        if s_mid.is_positive() {
            theta = &theta + (&c_mid - y) / &s_mid;
        }
        if theta.is_negative() {
            theta = BigRational::zero();
        }
        theta = round_dyadic(&theta, prec);
        prec += prec / 2;
        assert!(prec < 1 << 22, "arccos enclosure failed to converge");
    }
    unreachable!("arccos enclosure did not stabilize");
}

/// Rational enclosure of arccos(y) / 2pi, the breakpoint angle for a root of
/// the symmetrized form at cosine value y. Result lies inside (0, 1/2] up to
/// the width slack; callers refine until disjointness holds.
pub fn acos_over_2pi(y: &BigRational, width: &BigRational) -> (BigRational, BigRational) {
    let four = BigRational::from_integer(BigInt::from(4));
    let mut theta_width = width.clone();
    let mut prec = 64u32;
    loop {
        let (th_lo, th_hi) = acos_bounds(y, &theta_width);
        let (pi_lo, pi_hi) = pi_bounds(prec);
        let two_pi_lo = &pi_lo * BigRational::from_integer(BigInt::from(2));
        let two_pi_hi = &pi_hi * BigRational::from_integer(BigInt::from(2));
        let t_lo = &th_lo / &two_pi_hi;
        let t_hi = &th_hi / &two_pi_lo;
        if &t_hi - &t_lo <= *width {
            return (t_lo, t_hi);
        }
        theta_width /= &four;
        prec *= 2;
        assert!(prec < 1 << 22, "breakpoint enclosure failed to converge");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{rat, to_f64};

    #[test]
    fn pi_bracket_is_tight_and_correct() {
        let (lo, hi) = pi_bounds(80);
        // known digits of pi pin the bracket from both sides
        let below = crate::ratio::parse_rational("3.14159265358979323").unwrap();
        let above = crate::ratio::parse_rational("3.14159265358979324").unwrap();
        assert!(below < lo && lo < hi && hi < above);
        assert!(to_f64(&(hi - lo)) < 1e-20);
    }

    #[test]
    fn cos_enclosures_contain_truth() {
        for (n, d) in [
            (0i64, 1i64),
            (1, 2),
            (1, 1),
            (3, 2),
            (2, 1),
            (3, 1),
            (-1, 1),
            (25, 4),
        ] {
            let x = rat(n, d);
            let (lo, hi) = cos_bounds(&x, 70);
            let truth = to_f64(&x).cos();
            assert!(to_f64(&lo) <= truth + 1e-15, "lo too high at {n}/{d}");
            assert!(to_f64(&hi) >= truth - 1e-15, "hi too low at {n}/{d}");
            assert!(to_f64(&(hi - lo)) < 1e-18);
        }
    }

    #[test]
    fn sin_enclosures_contain_truth() {
        for (n, d) in [(1i64, 2i64), (1, 1), (3, 2), (-3, 2), (3, 1)] {
            let x = rat(n, d);
            let (lo, hi) = sin_bounds(&x, 70);
            let truth = to_f64(&x).sin();
            assert!(to_f64(&lo) <= truth + 1e-15);
            assert!(to_f64(&hi) >= truth - 1e-15);
        }
    }

    #[test]
    fn acos_bracket_known_value() {
        // arccos(1/2) = pi/3
        let (lo, hi) = acos_bounds(&rat(1, 2), &rat(1, 1_000_000_000));
        let truth = std::f64::consts::FRAC_PI_3;
        assert!(to_f64(&lo) <= truth && truth <= to_f64(&hi));
        assert!(to_f64(&(hi - lo)) <= 1e-9 + 1e-15);
    }

    #[test]
    fn acos_bracket_near_edges() {
        for y in [rat(99, 100), rat(-99, 100), rat(3, 4), rat(-3, 4)] {
            let (lo, hi) = acos_bounds(&y, &rat(1, 1 << 40));
            let truth = to_f64(&y).acos();
            assert!(to_f64(&lo) <= truth && truth <= to_f64(&hi));
        }
    }

    #[test]
    fn breakpoint_angle_for_cos_half() {
        // arccos(1/2) / 2pi = (pi/3) / 2pi = 1/6
        let (lo, hi) = acos_over_2pi(&rat(1, 2), &rat(1, 1 << 45));
        let sixth = rat(1, 6);
        assert!(lo <= sixth && sixth <= hi);
        assert!(to_f64(&(hi - lo)) < 1e-13);
    }
}
