use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::Rational;

pub fn euler_phi(n: usize) -> usize {
    assert!(n >= 1, "euler_phi of 0");
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
///
/// Computed as `x^n - 1` divided by every `Phi_d` with `d | n`, `d < n`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of 0");
    let mut poly = vec![BigInt::zero(); n + 1];
    poly[0] = -BigInt::one();
    poly[n] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        poly = divide_exact_monic(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

fn divide_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// An element of Q(zeta_n) in the power basis `1, zeta, .., zeta^(phi(n)-1)`.
///
/// Only equality is meaningful; there is no order on a cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElement {
    n: usize,
    coeffs: Vec<Rational>,
}

impl CycloElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coeffs: vec![Rational::zero(); euler_phi(n)],
        }
    }

    /// Canonical residue of `sum poly[i] * zeta^i` modulo `Phi_n`.
    pub fn reduce(poly: &[Rational], n: usize) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        let mut rem = poly.to_vec();
        for top in (deg..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[top], Rational::zero());
            if c.is_zero() {
                continue;
            }
            // zeta^top = -sum_{j<deg} phi[j] zeta^(top-deg+j)
            for (j, pc) in phi.iter().take(deg).enumerate() {
                rem[top - deg + j] -= &c * Rational::from_integer(pc.clone());
            }
        }
        rem.resize(deg, Rational::zero());
        Self { n, coeffs: rem }
    }

    /// `zeta_n^k`, exponent taken mod n.
    pub fn zeta_power(n: usize, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::reduce(&poly, n)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.n, other.n, "mixed cyclotomic orders");
    }
}

impl Add for &CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: &CycloElement) -> CycloElement {
        self.check_order(rhs);
        CycloElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: &CycloElement) -> CycloElement {
        self.check_order(rhs);
        CycloElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: &CycloElement) -> CycloElement {
        self.check_order(rhs);
        let mut prod = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        CycloElement::reduce(&prod, self.n)
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CycloElement {
    /// Ascending powers of `zeta`, e.g. `1/2 + zeta - 3*zeta^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("zeta")?,
                1 => write!(f, "{mag}*zeta")?,
                _ if unit => write!(f, "zeta^{i}")?,
                _ => write!(f, "{mag}*zeta^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for CycloElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
