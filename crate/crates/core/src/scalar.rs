//! Exact ordered fields used for coordinates and lengths.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive};

/// An exact ordered field. Floating point types deliberately do not qualify.
pub trait Scalar:
    Clone + Debug + Display + Ord + Hash + Num + Signed + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
    /// Reduced `"num/den"` with positive denominator.
    fn to_fraction(&self) -> String;
    fn parse_fraction(s: &str) -> Option<Self>;
    fn to_big(&self) -> BigRational;
    fn from_big(v: &BigRational) -> Option<Self>;
    /// Lossy conversion; used only for drawing.
    fn approx(&self) -> f64 {
        self.to_big().to_f64().unwrap_or(f64::NAN)
    }
    fn is_integer(&self) -> bool;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Debug
        + Display
        + Integer
        + Signed
        + Hash
        + FromStr
        + Send
        + Sync
        + 'static
        + From<i64>
        + Into<BigInt>
        + TryFrom<BigInt>,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from(v))
    }

    fn to_fraction(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_fraction(s: &str) -> Option<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = T::from_str(n).ok()?;
        let d = T::from_str(d).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Ratio::new(n, d))
    }

    fn to_big(&self) -> BigRational {
        BigRational::new(self.numer().clone().into(), self.denom().clone().into())
    }

    fn from_big(v: &BigRational) -> Option<Self> {
        let n = T::try_from(v.numer().clone()).ok()?;
        let d = T::try_from(v.denom().clone()).ok()?;
        Some(Ratio::new(n, d))
    }

    fn is_integer(&self) -> bool {
        self.denom().is_one()
    }
}

/// Default exact scalar.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_i64(n)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}
