//! Exact scalar arithmetic.
//!
//! Everything above this module is generic over [`Scalar`], an exact field
//! with decidable equality. Two backends are provided:
//!
//! - [`Rational`]: arbitrary-precision rationals, used with a fixed rational
//!   deformation parameter `q` (the default is `q = 2`).
//! - [`RatFunc`]: rational functions in an indeterminate `q` over the
//!   rationals. Slower, but immune to accidental coincidences at a specific
//!   value of `q`.
//!
//! The deformation parameter itself is carried by [`QParam`], which also
//! provides the powers `q^m` and the q-integers `[n]_q`.

mod ratfunc;
mod rational;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use thiserror::Error;

pub use ratfunc::{Poly, RatFunc};
pub use rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("malformed scalar {0:?}: expected \"p\" or \"p/q\" with an optional leading minus")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("invalid deformation parameter q = {0}: q must not be 0, 1 or -1")]
    InvalidQ(String),
}

/// An element of an exact field.
///
/// Values are always kept in a canonical reduced form, so `==` is exact
/// mathematical equality.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Integer power. Panics on a negative power of zero.
    fn powi(&self, m: i64) -> Self {
        let base = if m < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut e = m.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        acc
    }
}

/// The deformation parameter `q`.
///
/// Invariant: `q` is nonzero and not a root of unity. For rationals this
/// amounts to `q ∉ {0, 1, -1}`; the indeterminate is never a root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QParam<S> {
    value: S,
}

impl QParam<Rational> {
    pub fn new(value: Rational) -> Result<Self, ExactError> {
        if value.is_zero() || value.is_one() || (-value.clone()).is_one() {
            return Err(ExactError::InvalidQ(format_rational(&value)));
        }
        Ok(QParam { value })
    }

    pub fn from_i64(value: i64) -> Result<Self, ExactError> {
        Self::new(Rational::from_i64(value))
    }

    pub fn parse(text: &str) -> Result<Self, ExactError> {
        Self::new(parse_rational(text)?)
    }
}

impl Default for QParam<Rational> {
    fn default() -> Self {
        QParam {
            value: Rational::from_i64(2),
        }
    }
}

impl QParam<RatFunc> {
    /// `q` as a formal indeterminate.
    pub fn indeterminate() -> Self {
        QParam { value: RatFunc::q() }
    }
}

impl<S: Scalar> QParam<S> {
    pub fn value(&self) -> &S {
        &self.value
    }

    pub fn power(&self, m: i64) -> S {
        self.value.powi(m)
    }

    /// `[n]_q = (q^n - q^{-n}) / (q - q^{-1})`.
    pub fn bracket(&self, n: u32) -> S {
        let n = i64::from(n);
        (self.power(n) - self.power(-n)) / (self.power(1) - self.power(-1))
    }

    /// `q - q^{-1}`, nonzero by the invariant.
    pub fn q_minus_inverse(&self) -> S {
        self.power(1) - self.power(-1)
    }
}

impl<S: Scalar> fmt::Display for QParam<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A sign `±1`, used for the type of a module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(value: i64) -> Option<Self> {
        match value {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_scalar<S: Scalar>(self) -> S {
        S::from_i64(self.as_i64())
    }

    pub fn negate(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i64())
    }
}

/// `q^m`.
pub fn q_power<S: Scalar>(p: &QParam<S>, m: i64) -> S {
    p.power(m)
}

/// The q-integer `[n]_q`; `[0]_q = 0`.
pub fn q_bracket<S: Scalar>(p: &QParam<S>, n: u32) -> S {
    p.bracket(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn q_power_examples() {
        let q = QParam::default();
        assert_eq!(q_power(&q, 0), Rational::one());
        assert_eq!(q_power(&q, -2), rat(1, 4));
        assert_eq!(q_power(&q, 3), rat(8, 1));
    }

    #[test]
    fn q_bracket_examples() {
        let q = QParam::default();
        assert_eq!(q_bracket(&q, 0), Rational::zero());
        assert_eq!(q_bracket(&q, 1), Rational::one());
        // (8 - 1/8) / (2 - 1/2) = (63/8) / (3/2)
        assert_eq!(q_bracket(&q, 3), rat(21, 4));
    }

    #[test]
    fn bracket_is_symmetric_sum_of_powers() {
        for q in [QParam::default(), QParam::new(rat(-3, 5)).unwrap()] {
            for n in 1..=16u32 {
                let n64 = i64::from(n);
                let mut sum = Rational::zero();
                let mut e = n64 - 1;
                while e >= 1 - n64 {
                    sum += q.power(e);
                    e -= 2;
                }
                assert_eq!(q.bracket(n), sum, "n = {n}");
            }
        }
    }

    #[test]
    fn symbolic_bracket_identity() {
        let q = QParam::indeterminate();
        for n in 1..=6u32 {
            let n64 = i64::from(n);
            let sum = (0..n64).fold(RatFunc::zero(), |acc, k| acc + q.power(n64 - 1 - 2 * k));
            assert_eq!(q.bracket(n), sum);
        }
        assert_eq!(q.bracket(3).to_string(), "(q^4 + q^2 + 1)/(q^2)");
    }

    #[test]
    fn invalid_q_rejected() {
        for bad in ["0", "1", "-1", "2/2", "-3/3"] {
            assert!(matches!(QParam::parse(bad), Err(ExactError::InvalidQ(_))), "{bad}");
        }
        assert!(QParam::parse("1/2").is_ok());
        assert!(QParam::parse("-2").is_ok());
    }

    #[test]
    fn powi_negative_and_zero_exponent() {
        let x = rat(-2, 3);
        assert_eq!(x.powi(-3), rat(-27, 8));
        assert_eq!(Rational::zero().powi(0), Rational::one());
    }
}
