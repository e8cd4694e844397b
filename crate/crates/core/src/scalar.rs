//! Coefficient rings.
//!
//! Everything in this crate is exact. [`Ring`] is the bound used by the
//! polynomial and group-ring containers; [`Scalar`] adds a fraction field,
//! which is what the kernel computations in [`crate::linalg`] run over.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring with exact equality.
pub trait Ring:
    Clone
    + Eq
    + Debug
    + Display
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
}

impl<T> Ring for T where
    T: Clone
        + Eq
        + Debug
        + Display
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
        + 'static
{
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl<T: Ring + Div<Output = T>> Field for T {}

/// An integral domain that can serve as the base of a based module.
pub trait Scalar: Ring {
    type Fraction: Field;

    fn to_fraction(&self) -> Self::Fraction;

    /// Label used in file headers, e.g. `Z` or `GF(7)`.
    fn base_label() -> String;

    fn parse_scalar(s: &str) -> Option<Self>;

    /// Converts back from the fraction field when the value is integral.
    fn from_fraction(f: &Self::Fraction) -> Option<Self>;
}

impl Scalar for BigInt {
    type Fraction = BigRational;

    fn to_fraction(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn base_label() -> String {
        "Z".to_string()
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        BigInt::from_str(s.trim()).ok()
    }

    fn from_fraction(f: &BigRational) -> Option<Self> {
        f.is_integer().then(|| f.to_integer())
    }
}

/// Element of the prime field `Z/P`.
///
/// `P` must be prime; this is checked by [`Fp::new`] in debug builds only.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        debug_assert!(is_prime(P), "Fp modulus {P} is not prime");
        Fp(v % P)
    }

    pub fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {P})", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in prime field")
    }
}

impl<const P: u64> Scalar for Fp<P> {
    type Fraction = Self;

    fn to_fraction(&self) -> Self {
        *self
    }

    fn base_label() -> String {
        format!("GF({P})")
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        s.trim().parse::<i64>().ok().map(Fp::from_i64)
    }

    fn from_fraction(f: &Self) -> Option<Self> {
        Some(*f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn prime_field_arithmetic() {
        let a = F7::new(3);
        let b = F7::new(5);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((-a).value(), 4);
        assert_eq!(a / b * b, a);
        assert_eq!(F7::from_i64(-1).value(), 6);
        assert!(F7::zero().inverse().is_none());
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for v in 1..7 {
            let x = F7::new(v);
            assert_eq!(x * x.inverse().unwrap(), F7::one());
        }
    }

    #[test]
    fn integer_fraction_round_trip() {
        let n = BigInt::from(-12);
        assert_eq!(BigInt::from_fraction(&n.to_fraction()), Some(n));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(BigInt::from_fraction(&half), None);
        assert_eq!(BigInt::base_label(), "Z");
        assert_eq!(F7::base_label(), "GF(7)");
    }
}
