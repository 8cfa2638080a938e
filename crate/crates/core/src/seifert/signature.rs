//! The signature function on the unit circle and its integral.
//!
//! Breakpoints can only occur where the Alexander polynomial vanishes on the
//! circle. Substituting omega = exp(2 pi i t) turns that vanishing into an
//! integer polynomial condition on x = 2 cos(2 pi t); roots of that
//! polynomial are isolated exactly in [-2, 2] and transported to angle
//! enclosures. Signature values on the arcs between breakpoints come from
//! exact inertia counts at rational cosine samples.

use crate::error::{Error, Result};
use crate::ratio::{dyadic_eps, rat};
use crate::seifert::matrix::SeifertMatrix;
use crate::seifert::poly::{self, IntPoly, RootLoc};
use crate::seifert::quadform::{inertia, QuadRat};
use crate::seifert::trig::acos_over_2pi;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Exact complex rational, used for the symmetrized form at rational points
/// of the unit circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexRat {
    pub re: BigRational,
    pub im: BigRational,
}

/// A point omega on the unit circle with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitCirclePoint {
    re: BigRational,
    im: BigRational,
}

impl UnitCirclePoint {
    pub fn new(re: BigRational, im: BigRational) -> Result<Self> {
        if &re * &re + &im * &im != BigRational::one() {
            return Err(Error::Precondition(
                "point is not on the unit circle".into(),
            ));
        }
        Ok(UnitCirclePoint { re, im })
    }

    pub fn minus_one() -> Self {
        UnitCirclePoint {
            re: -BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        UnitCirclePoint {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }
}

/// (1 - omega) V + (1 - conj(omega)) V^T, the Hermitian form whose
/// signature is the knot signature at omega.
pub fn symmetrized_form(v: &SeifertMatrix, omega: &UnitCirclePoint) -> Vec<Vec<ComplexRat>> {
    let n = v.size();
    let one = BigRational::one();
    // 1 - omega = (1 - re) - i im ; 1 - conj(omega) = (1 - re) + i im
    let c = &one - omega.re();
    let s = omega.im().clone();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let vij = BigRational::from_integer(BigInt::from(v.entry(i, j)));
                    let vji = BigRational::from_integer(BigInt::from(v.entry(j, i)));
                    ComplexRat {
                        re: &c * (&vij + &vji),
                        im: &s * (&vji - &vij),
                    }
                })
                .collect()
        })
        .collect()
}

/// A breakpoint angle t in (0,1), known either exactly or through a
/// rational isolation interval lo <= t <= hi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Breakpoint {
    pub lo: BigRational,
    pub hi: BigRational,
    pub exact: Option<BigRational>,
}

impl Breakpoint {
    pub fn estimate(&self) -> BigRational {
        match &self.exact {
            Some(t) => t.clone(),
            None => (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2)),
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    fn mirrored(&self) -> Breakpoint {
        let one = BigRational::one();
        Breakpoint {
            lo: &one - &self.hi,
            hi: &one - &self.lo,
            exact: self.exact.as_ref().map(|t| &one - t),
        }
    }
}

/// Piecewise constant signature on the circle. `values[i]` is the value on
/// the open arc between `breakpoints[i]` and `breakpoints[i+1]`; the last
/// entry is the arc wrapping through t = 0. With no breakpoints there is a
/// single all-circle value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureFunction {
    pub size: usize,
    pub breakpoints: Vec<Breakpoint>,
    pub values: Vec<i64>,
}

impl SignatureFunction {
    /// Value strictly inside an arc; None at (or inside the enclosure of) a
    /// breakpoint, where the function is not defined.
    pub fn value_at(&self, t: &BigRational) -> Option<i64> {
        if self.breakpoints.is_empty() {
            return Some(self.values[0]);
        }
        for bp in &self.breakpoints {
            let hit = match &bp.exact {
                Some(x) => x == t,
                None => &bp.lo <= t && t <= &bp.hi,
            };
            if hit {
                return None;
            }
        }
        Some(self.value_right_of(t))
    }

    /// Value on the arc to the right of t (the limit from above). Defined
    /// everywhere; agrees with value_at away from breakpoints.
    pub fn value_right_of(&self, t: &BigRational) -> i64 {
        if self.breakpoints.is_empty() {
            return self.values[0];
        }
        let k = self.breakpoints.len();
        // index of first breakpoint estimate strictly greater than t
        let mut idx = 0;
        while idx < k && &self.breakpoints[idx].estimate() <= t {
            idx += 1;
        }
        if idx == 0 || idx == k {
            // before the first or after the last breakpoint: wrap arc
            self.values[k - 1]
        } else {
            self.values[idx - 1]
        }
    }

    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let k = self.breakpoints.len();
        let expected = if k == 0 { 1 } else { k };
        if self.values.len() != expected {
            return Err(format!(
                "expected {expected} arc values, found {}",
                self.values.len()
            ));
        }
        for v in &self.values {
            if v.rem_euclid(2) != 0 {
                return Err(format!("odd signature value {v}"));
            }
            if v.unsigned_abs() as usize > self.size {
                return Err(format!("value {v} exceeds matrix size {}", self.size));
            }
        }
        if *self.values.last().unwrap() != 0 {
            return Err("arc through t = 0 has nonzero value".into());
        }
        for bp in &self.breakpoints {
            if bp.lo > bp.hi || bp.lo <= BigRational::zero() || bp.hi >= BigRational::one() {
                return Err("breakpoint interval out of range".into());
            }
        }
        for w in self.breakpoints.windows(2) {
            if w[0].hi >= w[1].lo {
                return Err("breakpoint intervals overlap".into());
            }
        }
        // symmetry under t -> 1 - t
        for i in 0..k {
            let m = self.breakpoints[k - 1 - i].mirrored();
            let b = &self.breakpoints[i];
            if b.lo != m.lo || b.hi != m.hi || b.exact != m.exact {
                return Err("breakpoints not symmetric under t -> 1-t".into());
            }
        }
        if k > 0 {
            for i in 0..k - 1 {
                if self.values[i] != self.values[k - 2 - i] {
                    return Err("arc values not symmetric under t -> 1-t".into());
                }
            }
        }
        Ok(())
    }
}

/// The integral of the signature function over the circle (normalized to
/// length 1), with a rigorous error bound. The bound is zero when every
/// breakpoint is known exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rho0Value {
    pub value: BigRational,
    pub error_bound: BigRational,
}

impl Rho0Value {
    pub fn exact(value: BigRational) -> Self {
        Rho0Value {
            value,
            error_bound: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Rho0Value::exact(BigRational::zero())
    }

    pub fn is_exact(&self) -> bool {
        self.error_bound.is_zero()
    }

    pub fn add(&self, other: &Rho0Value) -> Rho0Value {
        Rho0Value {
            value: &self.value + &other.value,
            error_bound: &self.error_bound + &other.error_bound,
        }
    }

    pub fn neg(&self) -> Rho0Value {
        Rho0Value {
            value: -self.value.clone(),
            error_bound: self.error_bound.clone(),
        }
    }

    pub fn scale(&self, k: i64) -> Rho0Value {
        let f = BigRational::from_integer(BigInt::from(k));
        Rho0Value {
            value: &self.value * &f,
            error_bound: &self.error_bound * f.abs(),
        }
    }

    /// True when the enclosure [value - bound, value + bound] excludes zero.
    pub fn excludes_zero(&self) -> bool {
        self.value.abs() > self.error_bound
    }
}

/// One root of the circle condition, in both coordinates.
#[derive(Debug, Clone)]
struct CircleRoot {
    x: RootLoc,
    t: Breakpoint,
}

#[derive(Debug, Clone)]
struct CircleData {
    size: usize,
    /// Roots ordered by ascending t in (0, 1/2), i.e. descending x.
    roots: Vec<CircleRoot>,
    /// Arc signatures; entry 0 is the arc containing omega = 1 (x near 2),
    /// entry i the arc between roots i-1 and i, entry k the arc through
    /// omega = -1.
    region_sigmas: Vec<i64>,
}

/// The polynomial in x = 2 cos(2 pi t) whose roots in (-2, 2) are exactly
/// the unit-circle roots of the (palindromic, even-degree) polynomial p.
fn cosine_condition(p: &IntPoly) -> IntPoly {
    let d = p.degree().unwrap_or(0);
    assert!(d.is_multiple_of(2), "expected even degree, got {d}");
    let h = d / 2;
    // p(omega) * omega^(-h) = a_h + sum_{i>=1} a_{h+i} (omega^i + omega^-i)
    // and omega^i + omega^-i = C_i(x) with C_1 = x, C_i = x C_{i-1} - C_{i-2}.
    let mut out = IntPoly::constant(p.coeffs[h].clone());
    let mut c_prev = IntPoly::from_i64(&[2]); // C_0
    let mut c_cur = IntPoly::from_i64(&[0, 1]); // C_1
    for i in 1..=h {
        out = out.add(&c_cur.scale(&p.coeffs[h + i]));
        let next = c_cur.mul(&IntPoly::from_i64(&[0, 1])).sub(&c_prev);
        c_prev = std::mem::replace(&mut c_cur, next);
    }
    out
}

/// Exact angle for the cosine values that give rational breakpoints:
/// x = 0, 1, -1 correspond to t = 1/4, 1/6, 1/3.
fn exact_angle_for(x: &BigRational) -> Option<BigRational> {
    if x.is_zero() {
        Some(rat(1, 4))
    } else if *x == BigRational::one() {
        Some(rat(1, 6))
    } else if *x == -BigRational::one() {
        Some(rat(1, 3))
    } else {
        None
    }
}

/// Signature of the symmetrized form at omega with 2 cos(angle) = x, by
/// exact inertia of the real doubling over Q(sqrt(4 - x^2)). None when the
/// sample turned out singular.
pub fn signature_at_cos(v: &SeifertMatrix, x: &BigRational) -> Option<i64> {
    let n = v.size();
    if n == 0 {
        return Some(0);
    }
    let d = BigRational::from_integer(BigInt::from(4)) - x * x;
    assert!(!d.is_negative(), "sample outside [-2, 2]");
    let two = BigRational::from_integer(BigInt::from(2));
    let c = BigRational::one() - x / &two;
    let half = BigRational::one() / &two;
    // H = (1-x/2)(V + V^T) + i * s (V^T - V) with s = sqrt(d)/2; its real
    // doubling [[A, -B], [B, A]] is symmetric over Q(sqrt(d)).
    let mut m = vec![vec![QuadRat::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let vij = BigRational::from_integer(BigInt::from(v.entry(i, j)));
            let vji = BigRational::from_integer(BigInt::from(v.entry(j, i)));
            let a = &c * (&vij + &vji);
            let b = if d.is_zero() {
                BigRational::zero()
            } else {
                &half * (&vji - &vij)
            };
            m[i][j] = QuadRat::rational(a.clone());
            m[n + i][n + j] = QuadRat::rational(a);
            m[i][n + j] = QuadRat::radical(-b.clone());
            m[n + i][j] = QuadRat::radical(b);
        }
    }
    let (pos, neg) = inertia(m, &d)?;
    if pos + neg != 2 * n {
        return None;
    }
    let sig = pos as i64 - neg as i64;
    debug_assert!(sig % 2 == 0);
    Some(sig / 2)
}

fn sample_region(v: &SeifertMatrix, lo: &BigRational, hi: &BigRational) -> Result<i64> {
    let two = BigRational::from_integer(BigInt::from(2));
    let width = hi - lo;
    let mid = (lo + hi) / &two;
    let candidates = [
        mid.clone(),
        &mid + &width / BigRational::from_integer(BigInt::from(8)),
        &mid - &width / BigRational::from_integer(BigInt::from(8)),
        &mid + &width / BigRational::from_integer(BigInt::from(5)),
        &mid - &width / BigRational::from_integer(BigInt::from(5)),
    ];
    for cand in &candidates {
        if let Some(sig) = signature_at_cos(v, cand) {
            return Ok(sig);
        }
    }
    Err(Error::Precondition(
        "could not find a nondegenerate sample inside an arc".into(),
    ))
}

fn analyze(v: &SeifertMatrix, x_width: &BigRational, t_width: &BigRational) -> Result<CircleData> {
    let two = BigRational::from_integer(BigInt::from(2));
    let neg_two = -two.clone();
    let alex = v.alexander_polynomial();
    let mut xroots: Vec<RootLoc> = Vec::new();
    if alex.degree().unwrap_or(0) > 0 {
        let cond = cosine_condition(&alex);
        let sf = poly::squarefree_part(&cond);
        let (ratroots, rest) = poly::rational_roots(&sf);
        for r in ratroots {
            if neg_two < r && r < two {
                xroots.push(RootLoc::Exact(r));
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            xroots.extend(poly::isolate_roots(&rest, &neg_two, &two, x_width));
        }
        // descending x = ascending angle
        xroots.sort_by_key(|r| std::cmp::Reverse(r.lo()));
    }
    let mut roots = Vec::new();
    for xr in &xroots {
        let t = match xr {
            RootLoc::Exact(x) => match exact_angle_for(x) {
                Some(t) => Breakpoint {
                    lo: t.clone(),
                    hi: t.clone(),
                    exact: Some(t),
                },
                None => {
                    let y = x / &two;
                    let (lo, hi) = acos_over_2pi(&y, t_width);
                    Breakpoint {
                        lo,
                        hi,
                        exact: None,
                    }
                }
            },
            RootLoc::Interval(a, b) => {
                let (lo, _) = acos_over_2pi(&(b / &two), t_width);
                let (_, hi) = acos_over_2pi(&(a / &two), t_width);
                Breakpoint {
                    lo,
                    hi,
                    exact: None,
                }
            }
        };
        roots.push(CircleRoot { x: xr.clone(), t });
    }
    // Disjointness of the angle enclosures, including against the mirrored
    // half. Signals the caller to retry with tighter widths.
    let half = rat(1, 2);
    for w in roots.windows(2) {
        if w[0].t.hi >= w[1].t.lo {
            return Err(Error::Precondition("angle enclosures overlap".into()));
        }
    }
    if let Some(last) = roots.last() {
        if last.t.hi >= half {
            return Err(Error::Precondition("angle enclosure crosses 1/2".into()));
        }
    }
    if let Some(first) = roots.first() {
        if first.t.lo.is_zero() || first.t.lo.is_negative() {
            return Err(Error::Precondition("angle enclosure touches 0".into()));
        }
    }
    // Arc samples between consecutive roots in x-space.
    let mut region_sigmas = Vec::with_capacity(roots.len() + 1);
    let mut upper = two.clone();
    for r in &roots {
        region_sigmas.push(sample_region(v, &r.x.hi(), &upper)?);
        upper = r.x.lo();
    }
    region_sigmas.push(sample_region(v, &neg_two, &upper)?);
    Ok(CircleData {
        size: v.size(),
        roots,
        region_sigmas,
    })
}

fn analyze_refining(v: &SeifertMatrix, t_width: &BigRational) -> Result<CircleData> {
    let mut xw = t_width.clone();
    let mut tw = t_width.clone();
    let shrink = rat(1, 16);
    for _ in 0..24 {
        match analyze(v, &xw, &tw) {
            Ok(data) => return Ok(data),
            Err(Error::Precondition(_)) => {
                xw = &xw * &shrink;
                tw = &tw * &shrink;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::Precondition(
        "angle enclosures failed to separate".into(),
    ))
}

fn assemble(data: &CircleData) -> SignatureFunction {
    let k = data.roots.len();
    if k == 0 {
        return SignatureFunction {
            size: data.size,
            breakpoints: vec![],
            values: vec![data.region_sigmas[0]],
        };
    }
    let mut breakpoints: Vec<Breakpoint> = data.roots.iter().map(|r| r.t.clone()).collect();
    for i in (0..k).rev() {
        breakpoints.push(data.roots[i].t.mirrored());
    }
    let rs = &data.region_sigmas;
    let mut values = Vec::with_capacity(2 * k);
    values.extend_from_slice(&rs[1..=k]);
    for i in (1..k).rev() {
        values.push(rs[i]);
    }
    values.push(rs[0]);
    SignatureFunction {
        size: data.size,
        breakpoints,
        values,
    }
}

fn integrate(data: &CircleData) -> Rho0Value {
    let k = data.roots.len();
    if k == 0 {
        debug_assert_eq!(data.region_sigmas[0], 0);
        return Rho0Value::exact(BigRational::from_integer(BigInt::from(
            data.region_sigmas[0],
        )));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let ts: Vec<BigRational> = data.roots.iter().map(|r| r.t.estimate()).collect();
    let rs = &data.region_sigmas;
    let big = |v: i64| BigRational::from_integer(BigInt::from(v));
    // wrap arc (1 - t_1, t_1) has length 2 t_1
    let mut value = big(rs[0]) * &two * &ts[0];
    for i in 1..k {
        value += big(rs[i]) * &two * (&ts[i] - &ts[i - 1]);
    }
    value += big(rs[k]) * (BigRational::one() - &two * &ts[k - 1]);
    // Jump at root i is rs[i+1] - rs[i]; each enclosure contributes its
    // width times the jump at both the root and its mirror.
    let mut err = BigRational::zero();
    for i in 0..k {
        let jump = (rs[i + 1] - rs[i]).abs();
        err += big(jump) * &two * data.roots[i].t.width();
    }
    Rho0Value {
        value,
        error_bound: err,
    }
}

/// Breakpoint angles of the signature function over the whole circle, each
/// with an isolation interval no wider than `width`.
pub fn circle_roots(v: &SeifertMatrix, width: &BigRational) -> Result<Vec<Breakpoint>> {
    let data = analyze_refining(v, width)?;
    Ok(assemble(&data).breakpoints)
}

pub const DEFAULT_WIDTH_BITS: u32 = 40;

/// The signature function with breakpoint enclosures at the default width.
pub fn signature_function(v: &SeifertMatrix) -> Result<SignatureFunction> {
    signature_function_with_width(v, &dyadic_eps(DEFAULT_WIDTH_BITS))
}

pub fn signature_function_with_width(
    v: &SeifertMatrix,
    width: &BigRational,
) -> Result<SignatureFunction> {
    let data = analyze_refining(v, width)?;
    let sf = assemble(&data);
    debug_assert_eq!(sf.check_invariants(), Ok(()));
    Ok(sf)
}

/// rho_0 with the default tolerance of 2^-40 (~9e-13).
pub fn rho0(v: &SeifertMatrix) -> Result<Rho0Value> {
    rho0_with_tolerance(v, &dyadic_eps(DEFAULT_WIDTH_BITS))
}

/// rho_0 with error bound at most `tol`. The bound is 0 when every
/// breakpoint is an exact rational angle.
pub fn rho0_with_tolerance(v: &SeifertMatrix, tol: &BigRational) -> Result<Rho0Value> {
    assert!(tol.is_positive(), "tolerance must be positive");
    // Total error is sum |jump| * enclosure width over all breakpoints, so
    // aim each width below tol / (2 * size * (count+1)) and verify.
    let mut width = tol
        / BigRational::from_integer(BigInt::from(
            4 * (v.size() as i64 + 1) * (v.size() as i64 + 1),
        ));
    for _ in 0..16 {
        let data = analyze_refining(v, &width)?;
        let out = integrate(&data);
        if &out.error_bound <= tol {
            return Ok(out);
        }
        width /= BigRational::from_integer(BigInt::from(64));
    }
    Err(Error::Precondition(
        "rho0 refinement failed to reach tolerance".into(),
    ))
}
