//! Exact scalars.
//!
//! Everything geometric in this crate is generic over [`Scalar`], an exact
//! ordered field. Two implementations ship: [`Rational`] (arbitrary
//! precision) and [`QuadScalar`] (elements `a + b*sqrt(D)` of a real
//! quadratic field). [`CycloElement`] lives beside them but is deliberately
//! not a `Scalar`: cyclotomic fields here only support zero testing.

mod cyclo;
mod quad;
mod rational;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;

pub use cyclo::{cyclotomic_polynomial, euler_phi, CycloElement};
pub use quad::{is_square_free, QuadScalar};
pub use rational::{parse_rational, Rational};

/// Exact sign of a real number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// An exact ordered field element.
///
/// The `Ord` implementation is the real order. Arithmetic never rounds.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: Rational) -> Self;
    fn sign(&self) -> Sign;

    /// Parse the exact text form (`p/q`, or `p/q+r/s*sqrt(D)` where the
    /// field allows it).
    fn parse_text(text: &str) -> Result<Self, crate::error::Error>;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v.into()))
    }

    fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }

    fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    fn half() -> Self {
        Self::one() / Self::from_i64(2)
    }

    /// Nearest `f64`. Only for rendering; never feed it back into geometry.
    fn to_f64(&self) -> f64;
}

/// Text form of a slice of scalars.
pub fn to_strings<S: Scalar>(values: &[S]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}
