use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Scalar, Sign};
use crate::error::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator. Text form is `p/q`, or `p` when `q = 1`.
pub type Rational = num_rational::BigRational;

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn sign(&self) -> Sign {
        if Signed::is_positive(self) {
            Sign::Positive
        } else if Signed::is_negative(self) {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    fn parse_text(text: &str) -> Result<Self, Error> {
        parse_rational(text)
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Parse `p`, `p/q` or `-p/q` into canonical form.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_form() {
        let x = q(-3, 6);
        assert_eq!(x, q(-1, 2));
        assert_eq!(x.to_string(), "-1/2");
        assert_eq!(q(0, 5).to_string(), "0");
        assert_eq!(q(4, -2).to_string(), "-2");
        assert_eq!(*q(3, -9).denom(), BigInt::from(3));
    }

    #[test]
    fn signs() {
        assert_eq!(q(-3, 6).sign(), Sign::Negative);
        assert_eq!(q(0, 1).sign(), Sign::Zero);
        assert_eq!(q(1, 7).sign(), Sign::Positive);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("2/4").unwrap(), q(1, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), q(-7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }
}
