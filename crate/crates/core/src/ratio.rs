//! Small helpers around `BigRational`: the `p/q` wire format used by every
//! interface that prints exact values, and decimal conversions for tolerances.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders `-3/2` as `"-3/2"` and `5` as `"5"`.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Accepts `p/q`, a bare integer, or a decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let sign = if whole.trim_start().starts_with('-') {
            -1
        } else {
            1
        };
        let w = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| Error::Parse(format!("bad number {s:?}")))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad number {s:?}")));
        }
        let f = BigInt::from_str(frac).map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mag = BigRational::from_integer(w.abs()) + BigRational::new(f, scale);
        return Ok(if sign < 0 { -mag } else { mag });
    }
    let n = BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
    Ok(BigRational::from_integer(n))
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let approx =
            x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN);
        approx
    })
}

/// `1/2^k`, the granularity used by the enclosure refinement loops.
pub fn dyadic_eps(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}
