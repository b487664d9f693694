//! Field elements used by every matrix routine.
//!
//! Two backends share one interface: arbitrary-precision rationals ([`Q`]) for
//! identity checks, and complex doubles ([`C`]) for contour integration.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type C = Complex64;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact, so zero tests and pivots need no tolerance.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_f64(v: f64) -> Self;

    /// Exact zero test.
    fn is_zero(&self) -> bool;
    /// Modulus as a double; used for pivoting and convergence checks.
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> C;

    /// Zero test used by invariant checks: exact for rationals, `<= tol` otherwise.
    fn near_zero(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }

    /// Text form used in JSON and CSV output.
    fn render(&self) -> String;

    /// JSON form: rationals as `"p/q"` strings, complex numbers as `[re, im]`.
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }

    fn powi(&self, exp: i64) -> Self {
        if exp >= 0 {
            self.pow(exp as u32)
        } else {
            Self::one() / self.pow((-exp) as u32)
        }
    }
}

impl Scalar for Q {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).unwrap_or_else(Zero::zero)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn to_complex(&self) -> C {
        C::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn render(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
    fn to_json(&self) -> Value {
        Value::String(self.render())
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => parse_rational(&n.to_string()),
            other => Err(Error::Json(format!("expected rational, got {other}"))),
        }
    }
}

impl Scalar for C {
    const EXACT: bool = false;

    fn zero() -> Self {
        C::new(0.0, 0.0)
    }
    fn one() -> Self {
        C::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        C::new(v as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        C::new(num as f64 / den as f64, 0.0)
    }
    fn from_f64(v: f64) -> Self {
        C::new(v, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> C {
        *self
    }
    fn render(&self) -> String {
        format!("[{:.17e},{:.17e}]", self.re, self.im)
    }
    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }
    fn from_json(v: &Value) -> Result<Self> {
        let num = |x: &Value| {
            x.as_f64()
                .ok_or_else(|| Error::Json(format!("expected number, got {x}")))
        };
        match v {
            Value::Array(parts) if parts.len() == 2 => Ok(C::new(num(&parts[0])?, num(&parts[1])?)),
            Value::Number(_) => Ok(C::new(num(v)?, 0.0)),
            Value::String(s) => Ok(parse_rational(s)?.to_complex()),
            other => Err(Error::Json(format!("expected complex [re,im], got {other}"))),
        }
    }
}

/// Parses a rational written as `"p/q"`, `"p"` or a decimal literal.
pub fn parse_rational(text: &str) -> Result<Q> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::Json(format!("bad numerator in {text:?}")))?;
        let q: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::Json(format!("bad denominator in {text:?}")))?;
        if q.is_zero() {
            return Err(Error::Json(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Ok(i) = text.parse::<BigInt>() {
        return Ok(BigRational::from_integer(i));
    }
    text.parse::<f64>()
        .ok()
        .and_then(BigRational::from_float)
        .ok_or_else(|| Error::Json(format!("not a rational: {text:?}")))
}

/// Relative/absolute closeness used by float comparisons.
pub fn close<S: Scalar>(a: &S, b: &S, tol: f64) -> bool {
    if S::EXACT {
        a == b
    } else {
        let diff = (a.clone() - b.clone()).magnitude();
        diff <= tol * a.magnitude().max(b.magnitude()).max(1.0)
    }
}

/// Displays a scalar with the crate's canonical rendering.
pub struct Rendered<'a, S: Scalar>(pub &'a S);

impl<S: Scalar> Display for Rendered<'_, S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), Q::from_ratio(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), Q::from_i64(-4));
        assert_eq!(parse_rational("0.25").unwrap(), Q::from_ratio(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_renders_as_fraction() {
        assert_eq!(Q::from_i64(3).render(), "3/1");
        assert_eq!(Q::from_ratio(-2, 4).render(), "-1/2");
    }

    #[test]
    fn negative_powers() {
        assert_eq!(Q::from_i64(2).powi(-3), Q::from_ratio(1, 8));
        assert_eq!(C::from_f64(2.0).powi(2), C::new(4.0, 0.0));
    }
}
