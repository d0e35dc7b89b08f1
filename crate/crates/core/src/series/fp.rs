//! Truncated Puiseux polynomials over a prime field `𝔽_p`.
//!
//! Exponents live on the grid `(1/N)ℤ` and every term with exponent `>= T`
//! is dropped. Storage is dense over grid slots: slot `k` holds the
//! coefficient of `t^(k/N)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::PuiseuxPoly;
use crate::error::{Error, Result};
use crate::ext::{ExtRational, Rational};

/// Shared parameters of a family of truncated polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpContext {
    pub prime: u64,
    pub denominator: u64,
    pub truncation: Rational,
    /// First excluded slot: `ceil(truncation * denominator)`.
    pub slot_bound: i64,
}

impl FpContext {
    pub fn new(prime: u64, denominator: u64, truncation: Rational) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::InvalidArgument(format!("{prime} is not prime")));
        }
        if denominator == 0 {
            return Err(Error::InvalidArgument("exponent denominator must be positive".into()));
        }
        let scaled = &truncation * Rational::from_integer(BigInt::from(denominator));
        let slot_bound = scaled
            .ceil()
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::InvalidArgument("truncation out of range".into()))?;
        Ok(Self {
            prime,
            denominator,
            truncation,
            slot_bound,
        })
    }

    pub fn slot_exponent(&self, slot: i64) -> Rational {
        Rational::new(BigInt::from(slot), BigInt::from(self.denominator))
    }

    /// Slot index of an exponent, if it lies on the grid.
    pub fn exponent_slot(&self, e: &Rational) -> Result<i64> {
        let scaled = e * Rational::from_integer(BigInt::from(self.denominator));
        if !scaled.is_integer() {
            return Err(Error::ExponentOffGrid {
                exponent: e.to_string(),
                denominator: self.denominator,
            });
        }
        scaled
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::InvalidArgument("exponent out of range".into()))
    }

    /// Reduces a rational number modulo `p`.
    pub fn reduce(&self, q: &Rational) -> Result<u64> {
        let p = BigInt::from(self.prime);
        let den = q.denom().mod_floor(&p);
        if den.is_zero() {
            return Err(Error::DenominatorDivisibleByPrime { prime: self.prime });
        }
        let num = q.numer().mod_floor(&p).to_u64().expect("reduced residue");
        let den = den.to_u64().expect("reduced residue");
        Ok(mul_mod(num, inv_mod(den, self.prime), self.prime))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Element of `𝔽_p((t^{1/N}))` modulo `t^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPuiseuxPoly {
    ctx: FpContext,
    /// Slot of `coeffs[0]`; meaningful only when `coeffs` is nonempty.
    low: i64,
    /// Dense coefficients; first and last entries are nonzero.
    coeffs: Vec<u64>,
}

impl FpPuiseuxPoly {
    pub fn zero(ctx: &FpContext) -> Self {
        Self {
            ctx: ctx.clone(),
            low: 0,
            coeffs: Vec::new(),
        }
    }

    /// Builds from dense slots starting at `low`; slots at or above the bound are dropped.
    pub fn from_slots(ctx: &FpContext, low: i64, coeffs: Vec<u64>) -> Self {
        let p = ctx.prime;
        let keep = (ctx.slot_bound - low).clamp(0, coeffs.len() as i64) as usize;
        let mut coeffs: Vec<u64> = coeffs.into_iter().take(keep).map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|&c| c != 0).unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        let low = if coeffs.is_empty() { 0 } else { low + lead as i64 };
        Self {
            ctx: ctx.clone(),
            low,
            coeffs,
        }
    }

    /// Reduction of a rational Puiseux polynomial.
    pub fn from_puiseux(f: &PuiseuxPoly, ctx: &FpContext) -> Result<Self> {
        let mut slots = Vec::new();
        for (e, c) in f.terms() {
            let slot = ctx.exponent_slot(e)?;
            let residue = ctx.reduce(c)?;
            if slot < ctx.slot_bound {
                slots.push((slot, residue));
            }
        }
        let Some(low) = slots.first().map(|&(s, _)| s) else {
            return Ok(Self::zero(ctx));
        };
        let high = slots.last().map(|&(s, _)| s).unwrap_or(low);
        let mut coeffs = vec![0u64; (high - low + 1) as usize];
        for (s, c) in slots {
            coeffs[(s - low) as usize] = c;
        }
        Ok(Self::from_slots(ctx, low, coeffs))
    }

    pub fn context(&self) -> &FpContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest occupied slot, `None` for zero.
    pub fn val_slot(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    /// Valuation as an extended rational; zero means "vanishes below the truncation".
    pub fn val(&self) -> ExtRational {
        match self.val_slot() {
            Some(s) => ExtRational::Finite(self.ctx.slot_exponent(s)),
            None => ExtRational::Infinity,
        }
    }

    pub fn coeff_at_slot(&self, slot: i64) -> u64 {
        if self.coeffs.is_empty() || slot < self.low {
            return 0;
        }
        self.coeffs
            .get((slot - self.low) as usize)
            .copied()
            .unwrap_or(0)
    }

    /// Nonzero terms as (exponent, coefficient).
    pub fn terms(&self) -> Vec<(Rational, u64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.ctx.slot_exponent(self.low + i as i64), c))
            .collect()
    }

    fn span(&self) -> Option<(i64, i64)> {
        (!self.coeffs.is_empty()).then(|| (self.low, self.low + self.coeffs.len() as i64))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        debug_assert_eq!(self.ctx, other.ctx);
        let p = self.ctx.prime;
        let (lo, hi) = match (self.span(), other.span()) {
            (None, None) => return Self::zero(&self.ctx),
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
        };
        let coeffs = (lo..hi)
            .map(|s| {
                let b = other.coeff_at_slot(s);
                let b = if subtract { (p - b) % p } else { b };
                (self.coeff_at_slot(s) + b) % p
            })
            .collect();
        Self::from_slots(&self.ctx, lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::zero(&self.ctx).sub(self)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ctx, other.ctx);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        let p = self.ctx.prime;
        let low = self.low + other.low;
        let len = ((self.ctx.slot_bound - low).max(0) as usize)
            .min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut out = vec![0u64; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 || i >= len {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::from_slots(&self.ctx, low, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::rat;
    use proptest::prelude::*;

    fn ctx(p: u64, t: i64) -> FpContext {
        FpContext::new(p, 1, rat(t)).unwrap()
    }

    #[test]
    fn reduction_and_truncation() {
        let c = ctx(5, 4);
        let f: PuiseuxPoly = "7 + 10*t + t^2 + t^6".parse().unwrap();
        let g = FpPuiseuxPoly::from_puiseux(&f, &c).unwrap();
        assert_eq!(g.terms(), vec![(rat(0), 2), (rat(2), 1)]);
        assert_eq!(g.val(), ExtRational::int(0));
        let h: PuiseuxPoly = "1/5".parse().unwrap();
        assert_eq!(
            FpPuiseuxPoly::from_puiseux(&h, &c),
            Err(Error::DenominatorDivisibleByPrime { prime: 5 })
        );
        let off: PuiseuxPoly = "t^(1/2)".parse().unwrap();
        assert!(matches!(
            FpPuiseuxPoly::from_puiseux(&off, &c),
            Err(Error::ExponentOffGrid { .. })
        ));
    }

    #[test]
    fn rational_coefficients_reduce_by_inverse() {
        let c = ctx(7, 3);
        let half: PuiseuxPoly = "1/2".parse().unwrap();
        let two: PuiseuxPoly = "2".parse().unwrap();
        let prod = FpPuiseuxPoly::from_puiseux(&half, &c)
            .unwrap()
            .mul(&FpPuiseuxPoly::from_puiseux(&two, &c).unwrap());
        assert_eq!(prod.terms(), vec![(rat(0), 1)]);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(FpContext::new(9, 1, rat(3)).is_err());
    }

    fn small_poly() -> impl Strategy<Value = PuiseuxPoly> {
        prop::collection::vec((0i64..6, -20i64..20), 0..5).prop_map(|terms| {
            PuiseuxPoly::from_terms(terms.into_iter().map(|(e, c)| (rat(e), rat(c))))
        })
    }

    proptest! {
        #[test]
        fn agrees_with_rational_arithmetic_mod_p(f in small_poly(), g in small_poly()) {
            let c = ctx(11, 8);
            let ff = FpPuiseuxPoly::from_puiseux(&f, &c).unwrap();
            let gg = FpPuiseuxPoly::from_puiseux(&g, &c).unwrap();
            prop_assert_eq!(ff.add(&gg), FpPuiseuxPoly::from_puiseux(&(&f + &g), &c).unwrap());
            prop_assert_eq!(ff.sub(&gg), FpPuiseuxPoly::from_puiseux(&(&f - &g), &c).unwrap());
            prop_assert_eq!(ff.mul(&gg), FpPuiseuxPoly::from_puiseux(&(&f * &g), &c).unwrap());
        }
    }
}
