//! Finite-support Puiseux polynomials with rational coefficients and exponents.
//!
//! A [`PuiseuxPoly`] is a finite formal sum `Σ a_e t^e` with `a_e ∈ ℚ` and
//! `e ∈ ℚ`. Infinite series are handled by the caller through explicit
//! truncations. The truncated prime-field variant lives in [`fp`].

pub mod fp;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ext::{ExtRational, Rational};

pub use fp::FpPuiseuxPoly;
pub use parse::parse_puiseux;

/// `Σ a_e t^e`, stored as exponent → nonzero coefficient in ascending exponent order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PuiseuxPoly {
    terms: BTreeMap<Rational, Rational>,
}

impl PuiseuxPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Rational::zero())
    }

    /// `c · t^e`; the zero polynomial when `c == 0`.
    pub fn monomial(c: Rational, e: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `t^e`.
    pub fn t_pow(e: Rational) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// Builds from (exponent, coefficient) pairs, summing repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (Rational, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Rational, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Rational) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Least exponent in the support, `+∞` for zero.
    pub fn val(&self) -> ExtRational {
        match self.terms.keys().next() {
            Some(e) => ExtRational::Finite(e.clone()),
            None => ExtRational::Infinity,
        }
    }

    /// Lowest-order term `(exponent, coefficient)`.
    pub fn leading(&self) -> Option<(&Rational, &Rational)> {
        self.terms.iter().next()
    }

    pub fn max_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next_back()
    }

    /// Whether this is a single term `c · t^e`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Unit of the valuation ring: valuation exactly zero.
    pub fn is_unit(&self) -> bool {
        self.val() == ExtRational::zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplication by `t^shift`.
    pub fn shift(&self, shift: &Rational) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, a)| (e + shift, a.clone())).collect(),
        }
    }

    /// Terms with exponent strictly below `bound`.
    pub fn truncate_below(&self, bound: &Rational) -> Self {
        Self {
            terms: self
                .terms
                .range(..bound.clone())
                .map(|(e, a)| (e.clone(), a.clone()))
                .collect(),
        }
    }

    /// Least common denominator of all exponents (1 for the zero polynomial).
    pub fn exponent_denominator(&self) -> BigInt {
        self.terms
            .keys()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Whether every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Evaluates at a positive real `t`.
    pub fn eval_real(&self, t: f64) -> f64 {
        let ln_t = t.ln();
        self.terms
            .iter()
            .map(|(e, c)| crate::ext::rational_to_f64(c) * (crate::ext::rational_to_f64(e) * ln_t).exp())
            .sum()
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl Add for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Add for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, rhs: PuiseuxPoly) -> PuiseuxPoly {
        &self + &rhs
    }
}

impl Sub for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Sub for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, rhs: PuiseuxPoly) -> PuiseuxPoly {
        &self - &rhs
    }
}

impl Mul for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        let mut out = PuiseuxPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, rhs: PuiseuxPoly) -> PuiseuxPoly {
        &self * &rhs
    }
}

impl Neg for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        PuiseuxPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        -&self
    }
}

impl From<i64> for PuiseuxPoly {
    fn from(c: i64) -> Self {
        PuiseuxPoly::constant(crate::ext::rat(c))
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, e: &Rational) -> fmt::Result {
    if e.is_integer() {
        write!(f, "t^{}", e.numer())
    } else {
        write!(f, "t^({}/{})", e.numer(), e.denom())
    }
}

/// Canonical form: ascending exponents, no spaces, `c*t^e` with `t` for `e = 1`.
impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if negative {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let magnitude = c.abs();
            if e.is_zero() {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            if e.is_one() {
                write!(f, "t")?;
            } else {
                write_exponent(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PuiseuxPoly({self})")
    }
}

impl FromStr for PuiseuxPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_puiseux(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{rat, ratio};

    fn p(s: &str) -> PuiseuxPoly {
        s.parse().unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(PuiseuxPoly::zero().val(), ExtRational::Infinity);
        assert_eq!(p("1 - t^5").val(), ExtRational::int(0));
        assert_eq!(p("t + t^3").val(), ExtRational::int(1));
    }

    #[test]
    fn product_from_worked_example() {
        // term-by-term convolution: (1 - t^5)(3t + t^3) = 3t + t^3 - 3t^6 - t^8
        let expected = PuiseuxPoly::from_terms([
            (rat(1), rat(3)),
            (rat(3), rat(1)),
            (rat(6), rat(-3)),
            (rat(8), rat(-1)),
        ]);
        assert_eq!(&p("1-t^5") * &p("3*t+t^3"), expected);
    }

    #[test]
    fn additive_identity_and_half_exponents() {
        let f = p("3*t+t^3");
        assert_eq!(&f + &PuiseuxPoly::zero(), f);
        assert_eq!(&p("t^(1/2)") * &p("t^1/2"), p("t"));
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = p("1 + t");
        assert!((&f - &f).is_zero());
        assert_eq!((&f - &PuiseuxPoly::one()).to_string(), "t");
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("t^3 + 3*t").to_string(), "3*t+t^3");
        assert_eq!(p("-1/2*t^(-3/2) + 2").to_string(), "-1/2*t^(-3/2)+2");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-t^-1").to_string(), "-t^-1");
        assert_eq!(p("t^2").shift(&ratio(-1, 2)).to_string(), "t^(3/2)");
    }

    mod laws {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = PuiseuxPoly> {
            prop::collection::vec(((-6i64..6, 1i64..4), (-9i64..9, 1i64..5)), 0..5).prop_map(|t| {
                PuiseuxPoly::from_terms(
                    t.into_iter()
                        .map(|((en, ed), (cn, cd))| (ratio(en, ed), ratio(cn, cd))),
                )
            })
        }

        proptest! {
            #[test]
            fn valuation_is_multiplicative(f in poly(), g in poly()) {
                prop_assert_eq!((&f * &g).val(), f.val() + g.val());
            }

            #[test]
            fn valuation_is_ultrametric(f in poly(), g in poly()) {
                let sum = (&f + &g).val();
                prop_assert!(sum >= f.val().min_with(&g.val()));
                if f.val() != g.val() {
                    prop_assert_eq!(sum, f.val().min_with(&g.val()));
                }
            }

            #[test]
            fn print_then_parse_is_identity(f in poly()) {
                let printed = f.to_string();
                let back: PuiseuxPoly = printed.parse().unwrap();
                prop_assert_eq!(&back, &f);
                prop_assert_eq!(back.to_string(), printed);
            }
        }
    }
}
