//! Numeric regimes for structure constants.
//!
//! Definition files carry exact rationals and every construction on them stays
//! exact. Character tables and everything downstream of them (dual
//! hypergroups, dual hyperfields) live in `f64`. Both implement [`Scalar`] so
//! the hypergroup machinery is written once.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

/// Exact rational number backed by `i128` with overflow-checked arithmetic.
///
/// Every operation panics on overflow instead of wrapping. The hypergroups in
/// scope have tiny denominators so this never triggers in practice, but a
/// silent wrap would corrupt an exact axiom check.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub fn new(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(Ratio::new(numer, denom))
    }

    pub fn from_integer(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Nearest rational with denominator at most `max_denom`, used when a
    /// floating-point table has to be written back to a definition file.
    pub fn approximate(x: f64, max_denom: i128) -> Self {
        // continued fractions, stopping at the last convergent within bound
        let sign = if x < 0.0 { -1 } else { 1 };
        let mut v = x.abs();
        let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
        for _ in 0..64 {
            let a = v.floor();
            if a > 1e18 {
                break;
            }
            let a = a as i128;
            let p2 = a * p1 + p0;
            let q2 = a * q1 + q0;
            if q2 > max_denom {
                break;
            }
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
            let frac = v - a as f64;
            if frac < 1e-15 {
                break;
            }
            v = 1.0 / frac;
        }
        if q1 == 0 {
            return Rational::zero();
        }
        Rational::new(sign * p1, q1)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error from parsing a rational literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal {:?}", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p/q`, plain integers, and finite decimals such as `0.25`
    /// (parsed exactly, never through `f64`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: i128 = p.trim().parse().map_err(|_| err())?;
            let q: i128 = q.trim().parse().map_err(|_| err())?;
            if q == 0 {
                return Err(err());
            }
            return Ok(Rational::new(p, q));
        }
        if let Some((int, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 30 {
                return Err(err());
            }
            let negative = int.starts_with('-');
            let int_digits = int.trim_start_matches(['-', '+']);
            let int_val: i128 = if int_digits.is_empty() {
                0
            } else {
                int_digits.parse().map_err(|_| err())?
            };
            let scale = 10i128.checked_pow(frac.len() as u32).ok_or_else(err)?;
            let frac_val: i128 = frac.parse().map_err(|_| err())?;
            let numer = int_val
                .checked_mul(scale)
                .and_then(|v| v.checked_add(frac_val))
                .ok_or_else(err)?;
            let numer = if negative { -numer } else { numer };
            return Ok(Rational::new(numer, scale));
        }
        let n: i128 = t.parse().map_err(|_| err())?;
        Ok(Rational::from_integer(n))
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident, $what:literal) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(
                    self.0
                        .$checked(&rhs.0)
                        .unwrap_or_else(|| panic!(concat!("rational ", $what, " overflowed i128"))),
                )
            }
        }
    };
}

checked_binop!(Add, add, checked_add, "addition");
checked_binop!(Sub, sub, checked_sub, "subtraction");
checked_binop!(Mul, mul, checked_mul, "multiplication");
checked_binop!(Div, div, checked_div, "division");

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Ratio::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Ratio::one())
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational::from_integer(n)
    }
}

/// Scalar field for structure constants and measure weights.
pub trait Scalar:
    Copy
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
    + Sum
    + 'static
{
    /// Whether comparisons ignore tolerances.
    const EXACT: bool;

    fn to_f64(self) -> f64;

    fn from_rational(r: Rational) -> Self;

    fn from_usize(n: usize) -> Self;

    /// Equality, exact for rationals and within `tol` for floats.
    fn close(self, other: Self, tol: f64) -> bool;

    /// Strictly positive, i.e. counted as part of a support.
    fn is_support(self, tol: f64) -> bool;

    /// Negative beyond what the tolerance absorbs.
    fn is_negative_beyond(self, tol: f64) -> bool;

    fn magnitude(self) -> f64 {
        self.to_f64().abs()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn to_f64(self) -> f64 {
        // i128 -> f64 loses precision only for huge components
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn from_usize(n: usize) -> Self {
        Rational::from_integer(n as i128)
    }

    fn close(self, other: Self, _tol: f64) -> bool {
        self == other
    }

    fn is_support(self, _tol: f64) -> bool {
        self.is_positive()
    }

    fn is_negative_beyond(self, _tol: f64) -> bool {
        self.is_negative()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn to_f64(self) -> f64 {
        self
    }

    fn from_rational(r: Rational) -> Self {
        r.to_f64()
    }

    fn from_usize(n: usize) -> Self {
        n as f64
    }

    fn close(self, other: Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    fn is_support(self, tol: f64) -> bool {
        self > tol
    }

    fn is_negative_beyond(self, tol: f64) -> bool {
        self < -tol
    }
}

/// Least common multiple of denominators, handy for printing.
pub fn common_denominator(values: &[Rational]) -> i128 {
    values.iter().fold(1i128, |acc, v| acc.lcm(&v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_exactly() {
        let third: Rational = "1/3".parse().unwrap();
        assert_eq!(third, Rational::new(1, 3));
        assert_eq!(third + third + third, Rational::one());
    }

    #[test]
    fn parses_decimal_exactly() {
        let r: Rational = "0.25".parse().unwrap();
        assert_eq!(r, Rational::new(1, 4));
        let r: Rational = "-1.5".parse().unwrap();
        assert_eq!(r, Rational::new(-3, 2));
        let r: Rational = "7".parse().unwrap();
        assert_eq!(r, Rational::from_integer(7));
    }

    #[test]
    fn rejects_garbage() {
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1.".parse::<Rational>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["1/3", "-2/7", "5", "0"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
    }

    #[test]
    fn approximation_recovers_small_fractions() {
        assert_eq!(Rational::approximate(1.0 / 3.0 + 1e-14, 1_000_000), Rational::new(1, 3));
        assert_eq!(Rational::approximate(-0.75, 1000), Rational::new(-3, 4));
        assert_eq!(Rational::approximate(0.0, 1000), Rational::zero());
    }

    #[test]
    #[should_panic(expected = "overflowed")]
    fn overflow_panics() {
        let big = Rational::from_integer(i128::MAX / 2);
        let _ = big * big;
    }
}
