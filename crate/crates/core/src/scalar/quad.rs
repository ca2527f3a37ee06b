use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use super::rational::parse_rational;
use super::{Rational, Scalar, Sign};
use crate::error::Error;

/// An element `a + b*sqrt(D)` of the real quadratic field Q(sqrt(D)).
///
/// `D` is a value-level tag. Elements with `b = 0` are plain rationals and
/// carry tag 0, so they combine with any field. Combining two elements with
/// different nonzero tags panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    d: u64,
}

pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self, Error> {
        if b.is_zero() {
            return Ok(Self::rational(a));
        }
        if d < 2 || !is_square_free(d) {
            return Err(Error::InvalidField(d));
        }
        Ok(Self { a, b, d })
    }

    pub fn rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u64) -> Result<Self, Error> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    /// The field tag `D`, or `None` for a rational element.
    pub fn field_tag(&self) -> Option<u64> {
        (self.d != 0).then_some(self.d)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    fn merged_tag(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("mixed quadratic field tags sqrt({x}) and sqrt({y})"),
        }
    }

    fn build(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() {
            Self::rational(a)
        } else {
            Self { a, b, d }
        }
    }

    fn add_ref(&self, o: &Self) -> Self {
        let d = self.merged_tag(o);
        Self::build(&self.a + &o.a, &self.b + &o.b, d)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        let d = self.merged_tag(o);
        Self::build(&self.a - &o.a, &self.b - &o.b, d)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let d = self.merged_tag(o);
        let dq = Rational::from_integer(d.into());
        let a = &self.a * &o.a + &self.b * &o.b * dq;
        let b = &self.a * &o.b + &self.b * &o.a;
        Self::build(a, b, d)
    }

    fn recip(&self) -> Self {
        let dq = Rational::from_integer(self.d.into());
        let norm = &self.a * &self.a - &self.b * &self.b * dq;
        assert!(!norm.is_zero(), "division by zero");
        Self::build(&self.a / &norm, -(&self.b / &norm), self.d)
    }

    fn div_ref(&self, o: &Self) -> Self {
        self.merged_tag(o);
        self.mul_ref(&o.recip())
    }
}

impl Scalar for QuadScalar {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    fn one() -> Self {
        Self::rational(Rational::one())
    }

    fn from_rational(r: Rational) -> Self {
        Self::rational(r)
    }

    fn sign(&self) -> Sign {
        let sa = self.a.sign();
        let sb = self.b.sign();
        match (sa, sb) {
            (s, Sign::Zero) | (Sign::Zero, s) => s,
            (x, y) if x == y => x,
            // Opposite signs: whichever of a^2 and b^2*D is larger wins.
            _ => {
                let dq = Rational::from_integer(self.d.into());
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * dq;
                if a2 > b2d {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    fn parse_text(text: &str) -> Result<Self, Error> {
        text.parse()
    }

    fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (self.d as f64).sqrt()
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub_ref(other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

macro_rules! quad_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                self.$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &'a QuadScalar) -> QuadScalar {
                self.$imp(rhs)
            }
        }
        impl<'a, 'b> $tr<&'b QuadScalar> for &'a QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &'b QuadScalar) -> QuadScalar {
                self.$imp(rhs)
            }
        }
    };
}

quad_binop!(Add, add, add_ref);
quad_binop!(Sub, sub, sub_ref);
quad_binop!(Mul, mul, mul_ref);
quad_binop!(Div, div, div_ref);

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        Self::build(-self.a, -self.b, self.d)
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else if self.b.sign() == Sign::Negative {
            write!(f, "{}-{}*sqrt({})", self.a, -&self.b, self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl FromStr for QuadScalar {
    type Err = Error;

    /// Accepts `p/q`, `p/q+r/s*sqrt(D)`, `p/q-r/s*sqrt(D)`, `r/s*sqrt(D)`
    /// and `sqrt(D)`.
    fn from_str(text: &str) -> Result<Self, Error> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid quadratic scalar `{text}`"));
        let Some((head, tail)) = compact.split_once("sqrt(") else {
            return parse_rational(&compact).map(Self::rational);
        };
        let d: u64 = tail
            .strip_suffix(')')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        let head = head.strip_suffix('*').unwrap_or(head);
        // Split "a+b" / "a-b" at the last sign that follows a digit.
        let bytes = head.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| matches!(bytes[i], b'+' | b'-') && bytes[i - 1].is_ascii_digit());
        let (a_text, b_text) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let a = parse_rational(a_text)?;
        let b = match b_text.strip_prefix('+').unwrap_or(b_text) {
            "" => Rational::one(),
            "-" => -Rational::one(),
            t => parse_rational(t)?,
        };
        if b.is_zero() {
            return Ok(Self::rational(a));
        }
        Self::new(a, b, d)
    }
}
