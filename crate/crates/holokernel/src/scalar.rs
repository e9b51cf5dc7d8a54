//! Exact scalars: arbitrary-precision rationals optionally tagged with a power of pi.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An exact rational number times an integer power of pi.
///
/// Addition and subtraction require equal pi powers (a zero value is
/// compatible with any power). Multiplication and division combine them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactScalar {
    q: BigRational,
    pi_power: i32,
}

impl ExactScalar {
    pub fn new(q: BigRational, pi_power: i32) -> Self {
        let pi_power = if q.is_zero() { 0 } else { pi_power };
        ExactScalar { q, pi_power }
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::new(BigRational::from_integer(BigInt::from(n)), 0)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExactScalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            0,
        )
    }

    pub fn pi_times(num: i64, den: i64, pi_power: i32) -> Self {
        assert!(den != 0, "zero denominator");
        ExactScalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            pi_power,
        )
    }

    pub fn zero() -> Self {
        ExactScalar::new(BigRational::zero(), 0)
    }

    pub fn one() -> Self {
        ExactScalar::new(BigRational::one(), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.q.is_one() && self.pi_power == 0
    }

    pub fn rational(&self) -> &BigRational {
        &self.q
    }

    pub fn pi_power(&self) -> i32 {
        self.pi_power
    }

    /// Rational part as (numerator, denominator) strings.
    pub fn is_rational(&self) -> bool {
        self.pi_power == 0
    }

    pub fn factorial(k: u32) -> Self {
        let mut acc = BigRational::one();
        for i in 1..=k {
            acc *= BigRational::from_integer(BigInt::from(i));
        }
        ExactScalar::new(acc, 0)
    }

    pub fn binomial(n: i64, k: u32) -> Self {
        let mut acc = BigRational::one();
        for i in 0..k as i64 {
            acc *= BigRational::from_integer(BigInt::from(n - i));
        }
        ExactScalar::new(acc, 0) / ExactScalar::factorial(k)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ExactScalar::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        ExactScalar::new(self.q.recip(), -self.pi_power)
    }

    pub fn abs(&self) -> Self {
        ExactScalar::new(self.q.abs(), self.pi_power)
    }

    /// Sign of the rational part: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.q.is_zero() {
            0
        } else if self.q.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        assert_eq!(
            self.pi_power, rhs.pi_power,
            "cannot add scalars with different pi powers"
        );
        ExactScalar::new(self.q + rhs.q, self.pi_power)
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        self + (-rhs)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-self.q, self.pi_power)
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        ExactScalar::new(self.q * rhs.q, self.pi_power + rhs.pi_power)
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        ExactScalar::new(self.q / rhs.q, self.pi_power - rhs.pi_power)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.q),
            1 => write!(f, "{}*pi", self.q),
            p => write!(f, "{}*pi^{}", self.q, p),
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_representation() {
        let a = ExactScalar::ratio(2, 4);
        let b = ExactScalar::ratio(1, 2);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/2");
    }

    #[test]
    fn pi_arithmetic() {
        let two_pi = ExactScalar::pi_times(2, 1, 1);
        let half = ExactScalar::ratio(1, 2);
        let p = two_pi.clone() * half;
        assert_eq!(p, ExactScalar::pi_times(1, 1, 1));
        let q = two_pi.clone() / ExactScalar::pi_times(1, 1, 1);
        assert_eq!(q, ExactScalar::from_int(2));
        // zero is compatible with any pi power
        assert_eq!(two_pi.clone() + ExactScalar::zero(), two_pi);
    }

    #[test]
    #[should_panic(expected = "different pi powers")]
    fn pi_mismatch_panics() {
        let _ = ExactScalar::pi_times(1, 1, 1) + ExactScalar::one();
    }

    #[test]
    fn binomials() {
        assert_eq!(ExactScalar::binomial(5, 2), ExactScalar::from_int(10));
        assert_eq!(ExactScalar::binomial(-1, 3), ExactScalar::from_int(-1));
        assert_eq!(ExactScalar::factorial(5), ExactScalar::from_int(120));
    }
}
