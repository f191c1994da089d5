//! Arbitrary-precision rational scalars and their `"p/q"` string form.
//!
//! Every coordinate, area and flux quantity in the exact pipeline is a
//! [`Scalar`]. The string form writes `"p"` when the denominator is 1 and
//! `"p/q"` otherwise; the parser accepts both.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Scalar = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part in rational literal: {0}")]
    BadInteger(String),
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
}

/// `n/d` as a scalar. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_scalar(s: &str) -> Result<Scalar, ScalarParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| ScalarParseError::BadInteger(num.to_string()))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| ScalarParseError::BadInteger(d.to_string()))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ScalarParseError::ZeroDenominator);
    }
    Ok(BigRational::new(n, d))
}

/// `"p"` when the denominator is 1, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Nearest-double approximation, robust to numerator/denominator overflow.
pub fn to_f64(x: &Scalar) -> f64 {
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Shift both parts down to a representable range, preserving the ratio.
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as u64;
    let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Exact rational value of a finite double.
pub fn from_f64(x: f64) -> Scalar {
    BigRational::from_float(x).expect("finite float")
}

/// Integer part of sqrt for a nonnegative rational, scaled bracket:
/// returns `(lo, hi)` with `lo <= sqrt(x) <= hi` and `hi - lo <= 1/10^13`.
pub fn sqrt_bracket(x: &Scalar) -> (Scalar, Scalar) {
    assert!(!x.is_negative(), "sqrt of negative rational");
    let scale = BigInt::from(10u8).pow(13);
    // sqrt(p/q) = sqrt(p*q)/q ; bracket sqrt(p*q) with integer sqrt.
    let p = x.numer();
    let q = x.denom();
    let n = p * q * (&scale * &scale);
    let s = n.sqrt();
    let denom = q * &scale;
    let lo = BigRational::new(s.clone(), denom.clone());
    let hi = BigRational::new(s + BigInt::one(), denom);
    (lo, hi)
}
