//! Exact rational scalars.
//!
//! Every shift, amplitude, window bound and interval length in this crate is
//! a [`Rational`]. Arithmetic is exact; nothing ever rounds, so comparisons
//! between jump points of step functions are decidable.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An arbitrary-precision rational, stored reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `numerator / denominator`.
    ///
    /// Panics if `denominator` is zero; use [`Rational::from_str`] for
    /// fallible construction from user input.
    pub fn new(numerator: i64, denominator: i64) -> Self {
        assert!(denominator != 0, "denominator must be non-zero");
        Rational(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        ))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Largest integer `<= self`.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// `floor(self)` as `u64`; `None` when negative or too large.
    pub fn floor_u64(&self) -> Option<u64> {
        let f = self.floor_int();
        if f.is_negative() {
            None
        } else {
            f.to_u64()
        }
    }

    /// Least common multiple of two strictly positive rationals:
    /// `lcm(n1/d1, n2/d2) = lcm(n1, n2) / gcd(d1, d2)` on reduced forms.
    pub fn lcm_positive(&self, other: &Self) -> Self {
        debug_assert!(self.is_positive() && other.is_positive());
        let num = self.numerator().lcm(other.numerator());
        let den = self.denominator().gcd(other.denominator());
        Rational(BigRational::new(num, den))
    }

    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Error produced when a numeral string is not an exact integer, fraction or
/// decimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid numeral '{}': expected an integer, a fraction like 3/2, or a decimal like 0.25",
            self.0
        )
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `"-7"`, `"3/2"` and `"0.25"`. Binary floats are not a thing
    /// here: decimal strings convert exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseRationalError(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            return Ok(Rational(BigRational::new(num, den)));
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let int = BigInt::from_str(int_part).map_err(|_| bad())?;
            let negative = int_part.trim_start().starts_with('-');
            let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
            let frac = BigInt::from_str(frac_part).map_err(|_| bad())?;
            let num = if negative {
                int * &scale - frac
            } else {
                int * &scale + frac
            };
            return Ok(Rational(BigRational::new(num, scale)));
        }
        let n = BigInt::from_str(s.trim()).map_err(|_| bad())?;
        Ok(Rational(BigRational::from_integer(n)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stays_reduced_with_positive_denominator() {
        let r = Rational::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r, Rational::new(-3, 2));
    }

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::integer(7));
        assert_eq!("-3/9".parse::<Rational>().unwrap(), Rational::new(-1, 3));
        assert_eq!("0.25".parse::<Rational>().unwrap(), Rational::new(1, 4));
        assert_eq!("-1.5".parse::<Rational>().unwrap(), Rational::new(-3, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1.5e3".parse::<Rational>().is_err());
        assert!(".5".parse::<Rational>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "-7", "3/2", "-11/4"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
    }

    #[test]
    fn exact_arithmetic() {
        let a = Rational::new(1, 3);
        let b = Rational::new(1, 6);
        assert_eq!(&a + &b, Rational::new(1, 2));
        assert_eq!(&a - &b, Rational::new(1, 6));
        assert_eq!(&a * &b, Rational::new(1, 18));
        assert_eq!(&a / &b, Rational::integer(2));
    }

    #[test]
    fn rational_lcm() {
        let a = Rational::integer(4);
        let b = Rational::integer(6);
        assert_eq!(a.lcm_positive(&b), Rational::integer(12));
        let c = Rational::new(3, 2);
        let d = Rational::new(1, 4);
        // lcm(3/2, 1/4) = lcm(3,1)/gcd(2,4) = 3/2
        assert_eq!(c.lcm_positive(&d), Rational::new(3, 2));
    }

    #[test]
    fn floor_is_toward_negative_infinity() {
        assert_eq!(Rational::new(7, 2).floor_int(), BigInt::from(3));
        assert_eq!(Rational::new(-7, 2).floor_int(), BigInt::from(-4));
        assert_eq!(Rational::new(-1, 2).floor_u64(), None);
        assert_eq!(Rational::new(9, 3).floor_u64(), Some(3));
    }
}
