//! Scalar abstraction shared by the exact (arbitrary-precision rational) and
//! binary64 code paths.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Field operations needed by the structured-matrix code, implemented for
/// [`Rational`] (exact) and `f64`.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_rational(v: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// Integer power; negative exponents take the reciprocal.
    fn pow_int(&self, e: i64) -> Self;
    /// Real power, `None` when the result is not representable in this scalar type.
    fn pow_real(&self, e: f64) -> Option<Self>;
    fn to_text(&self) -> String;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(v: &Rational) -> Self {
        v.clone()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn pow_int(&self, e: i64) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        num_traits::pow(base, e.unsigned_abs() as usize)
    }

    fn pow_real(&self, e: f64) -> Option<Self> {
        integer_value(e).map(|k| self.pow_int(k))
    }

    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(v: &Rational) -> Self {
        rational_to_f64(v)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn pow_int(&self, e: i64) -> Self {
        if let Ok(k) = i32::try_from(e) {
            self.powi(k)
        } else {
            self.powf(e as f64)
        }
    }

    fn pow_real(&self, e: f64) -> Option<Self> {
        Some(self.powf(e))
    }

    fn to_text(&self) -> String {
        format_f64(*self)
    }
}

/// Exact integer value of `e` if it is an integer within `i64` range.
pub fn integer_value(e: f64) -> Option<i64> {
    if e.is_finite() && e.fract() == 0.0 && e.abs() < 9.0e15 {
        Some(e as i64)
    } else {
        None
    }
}

/// Correctly scaled conversion; avoids overflow of numerator or denominator alone.
pub fn rational_to_f64(v: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (v.numer().to_f64(), v.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let nb = v.numer().bits() as i64;
    let db = v.denom().bits() as i64;
    let shift = nb - db - 60;
    let scaled = if shift >= 0 {
        v.numer().clone() / (v.denom() << (shift as usize))
    } else {
        (v.numer() << ((-shift) as usize)) / v.denom().clone()
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Shortest round-trip decimal form of an `f64`.
pub fn format_f64(v: f64) -> String {
    format!("{v:?}")
}

/// Parse `"a"` or `"a/b"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational: {t:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {t:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

/// A scalar token from user input: exact when it parses as a rational.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarToken {
    Exact(Rational),
    Float(f64),
}

impl ScalarToken {
    pub fn parse(text: &str) -> Result<Self> {
        if let Ok(q) = parse_rational(text) {
            return Ok(ScalarToken::Exact(q));
        }
        let t = text.trim();
        t.parse::<f64>()
            .map(ScalarToken::Float)
            .map_err(|_| Error::Parse(format!("not a number: {t:?}")))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ScalarToken::Exact(q) => rational_to_f64(q),
            ScalarToken::Float(x) => *x,
        }
    }
}

/// Serde helper: rationals as `"a/b"` strings.
pub fn serialize_rational<S: serde::Serializer>(
    v: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
