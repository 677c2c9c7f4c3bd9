//! Exact coefficient fields: rationals (real mode) and Gaussian rationals (complex mode).

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type GaussianRational = Complex<BigRational>;

pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parsed = Rational::from_str(text).map_err(|_| Error::Parse(format!("bad rational {text:?}")))?;
    Ok(parsed)
}

pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// A coefficient field with exact arithmetic and a squared modulus in Q.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;
    /// |c|², always a nonnegative rational.
    fn abs_sq(&self) -> Rational;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn abs_sq(&self) -> Rational {
        self * self
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(Self::from_i64(n.as_i64().unwrap())),
            _ => Err(Error::Parse(format!("expected rational string, got {v}"))),
        }
    }
}

/// Complex coefficients serialize as `["re", "im"]`.
impl Scalar for GaussianRational {
    fn from_i64(v: i64) -> Self {
        Complex::new(Rational::from_i64(v), Rational::zero())
    }

    fn abs_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn to_json(&self) -> Value {
        Value::Array(vec![self.re.to_json(), self.im.to_json()])
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Array(parts) if parts.len() == 2 => {
                Ok(Complex::new(Rational::from_json(&parts[0])?, Rational::from_json(&parts[1])?))
            }
            other => Ok(Complex::new(Rational::from_json(other)?, Rational::zero())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let q = rational(-6, 4);
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(Rational::from_json(&q.to_json()).unwrap(), q);
        assert_eq!(parse_rational("7").unwrap(), rational(7, 1));
        assert!(parse_rational("x/2").is_err());
    }

    #[test]
    fn gaussian_modulus() {
        let z = Complex::new(rational(3, 1), rational(4, 1));
        assert_eq!(z.abs_sq(), rational(25, 1));
        assert_eq!(GaussianRational::from_json(&z.to_json()).unwrap(), z);
    }
}
