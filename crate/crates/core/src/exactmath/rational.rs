use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExactError, Scalar};

pub type Rational = num_rational::BigRational;

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }

    fn one() -> Self {
        <Rational as One>::one()
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Parses `"p"` or `"p/q"` with an optional leading minus on `p`.
///
/// Surrounding whitespace, a leading plus and signs on the denominator are
/// rejected so that the text form stays unambiguous.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let malformed = || ExactError::Malformed(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let numer: BigInt = num.parse().map_err(|_| malformed())?;
    let denom: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            d.parse().map_err(|_| malformed())?
        }
    };
    if denom.is_zero() {
        return Err(ExactError::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, with `q > 0`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        debug_assert!(value.denom().is_positive());
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(format_rational(&parse_rational("-3/4").unwrap()), "-3/4");
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("-0").unwrap()), "0");
        assert_eq!(format_rational(&parse_rational("10/5").unwrap()), "2");
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in ["", "-", "1/", "/2", "+1", " 1", "1.5", "1/-2", "a", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
        assert!(matches!(
            parse_rational("3/0"),
            Err(ExactError::ZeroDenominator(_))
        ));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn text_roundtrip(x in small_rational()) {
            prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }

        #[test]
        fn field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            if let Some(inv) = Scalar::inv(&a) {
                prop_assert!(Scalar::is_one(&(a.clone() * inv)));
            } else {
                prop_assert!(Scalar::is_zero(&a));
            }
        }
    }
}
