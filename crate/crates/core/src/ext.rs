//! Rationals and the extended rationals `ℚ ∪ {+∞}`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (optionally signed).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    // Ratio<BigInt>::to_f64 handles huge numerators and denominators.
    q.to_f64().unwrap_or(f64::NAN)
}

/// An element of `ℚ ∪ {+∞}` with `+∞` absorbing addition and dominating order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(Rational::zero())
    }

    pub fn int(n: i64) -> Self {
        ExtRational::Finite(rat(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinity => None,
        }
    }

    pub fn into_finite(self) -> Option<Rational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinity => None,
        }
    }

    /// Tropical sum, i.e. the minimum.
    pub fn min_with(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, ExtRational::Finite(q) if q.is_negative())
    }

    /// `self - other` where `other` is finite; `∞ - q = ∞`.
    pub fn sub_finite(&self, other: &Rational) -> Self {
        match self {
            ExtRational::Finite(q) => ExtRational::Finite(q - other),
            ExtRational::Infinity => ExtRational::Infinity,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRational::Finite(q) => rational_to_f64(q),
            ExtRational::Infinity => f64::INFINITY,
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(q: Rational) -> Self {
        ExtRational::Finite(q)
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinity) => Ordering::Less,
            (ExtRational::Infinity, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: &ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinity,
        }
    }
}

impl Add for ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: ExtRational) -> ExtRational {
        &self + &rhs
    }
}

impl Add<&Rational> for &ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: &Rational) -> ExtRational {
        match self {
            ExtRational::Finite(a) => ExtRational::Finite(a + rhs),
            ExtRational::Infinity => ExtRational::Infinity,
        }
    }
}

impl Sub<&Rational> for &ExtRational {
    type Output = ExtRational;
    fn sub(self, rhs: &Rational) -> ExtRational {
        self.sub_finite(rhs)
    }
}

impl Neg for &ExtRational {
    type Output = Option<ExtRational>;
    fn neg(self) -> Option<ExtRational> {
        self.finite().map(|q| ExtRational::Finite(-q))
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => write!(f, "{q}"),
            ExtRational::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtRational {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        let s = s.trim();
        if s == "inf" || s == "∞" || s == "+inf" {
            return Ok(ExtRational::Infinity);
        }
        parse_rational(s).map(ExtRational::Finite).ok_or(())
    }
}
