//! Random points of `L ∩ (K^×)^n` and their valuations.

use rand::Rng;
use rayon::prelude::*;

use super::trial_rng;
use crate::error::{Error, Result};
use crate::ext::Rational;
use crate::lattice::LatticeMatrix;
use crate::series::PuiseuxPoly;
use crate::tropical::TropicalPoint;

/// Attempts per sample before a configuration is declared degenerate.
pub const RETRY_BUDGET: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub trials: usize,
    /// Coefficients are drawn uniformly from `{−P,…,−1,1,…,P}`.
    pub coefficient_pool: i64,
    /// Maximum number of terms per coefficient series.
    pub support_size: usize,
    /// Exponents are multiples of `1/N`.
    pub exponent_denominator: i64,
    /// Exponents lie in `[0, max_exponent]`.
    pub max_exponent: i64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 1000,
            coefficient_pool: 1 << 20,
            support_size: 3,
            exponent_denominator: 1,
            max_exponent: 4,
        }
    }
}

impl SampleConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.coefficient_pool < 1 || self.trials < 1 || self.support_size < 1 {
            return Err(Error::InvalidArgument(
                "pool, trials and support size must be positive".into(),
            ));
        }
        if self.exponent_denominator < 1 || self.max_exponent < 0 {
            return Err(Error::InvalidArgument("invalid exponent range".into()));
        }
        Ok(())
    }
}

pub fn random_coefficient(rng: &mut impl Rng, pool: i64) -> Rational {
    let k = rng.gen_range(1..=pool);
    Rational::from_integer(if rng.gen_bool(0.5) { k } else { -k }.into())
}

/// A random polynomial with up to `support` terms, exponents in `[lo, hi]` on the grid `(1/den)ℤ`.
pub fn random_series(
    rng: &mut impl Rng,
    pool: i64,
    support: usize,
    den: i64,
    lo: i64,
    hi: i64,
) -> PuiseuxPoly {
    let terms = rng.gen_range(1..=support);
    PuiseuxPoly::from_terms((0..terms).map(|_| {
        let k = rng.gen_range(lo * den..=hi * den);
        (Rational::new(k.into(), den.into()), random_coefficient(rng, pool))
    }))
}

/// A random unit of `𝒪_K`: nonzero constant term plus higher-order terms.
pub fn random_unit(rng: &mut impl Rng, pool: i64, support: usize, hi: i64) -> PuiseuxPoly {
    let tail = random_series(rng, pool, support, 1, 1, hi.max(1));
    &PuiseuxPoly::constant(random_coefficient(rng, pool)) + &tail
}

/// A random valid `r × n` lattice matrix with integer exponents in `[lo, hi]`.
pub fn random_lattice(
    rng: &mut impl Rng,
    r: usize,
    n: usize,
    pool: i64,
    lo: i64,
    hi: i64,
) -> LatticeMatrix {
    loop {
        let rows = (0..r)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if rng.gen_bool(0.15) {
                            PuiseuxPoly::zero()
                        } else {
                            random_series(rng, pool, 2, 1, lo, hi)
                        }
                    })
                    .collect()
            })
            .collect();
        if let Ok(a) = LatticeMatrix::new(rows) {
            return a;
        }
    }
}

fn random_coefficients(a: &LatticeMatrix, cfg: &SampleConfig, rng: &mut impl Rng) -> Vec<PuiseuxPoly> {
    (0..a.r())
        .map(|_| {
            random_series(
                rng,
                cfg.coefficient_pool,
                cfg.support_size,
                cfg.exponent_denominator,
                0,
                cfg.max_exponent,
            )
        })
        .collect()
}

/// One lattice point with all coordinates nonzero, or `None` after the retry budget.
pub fn sample_point(a: &LatticeMatrix, cfg: &SampleConfig, trial: u64) -> Option<Vec<PuiseuxPoly>> {
    let mut rng = trial_rng(cfg.seed, trial);
    (0..RETRY_BUDGET).find_map(|_| {
        let y = random_coefficients(a, cfg, &mut rng);
        let z = a.combine_rows(&y);
        z.iter().all(|f| !f.is_zero()).then_some(z)
    })
}

/// `val(y·A)` for `cfg.trials` random `y ∈ 𝒪_K^r`, in trial order.
pub fn sample_lattice_valuation(a: &LatticeMatrix, cfg: &SampleConfig) -> Result<Vec<TropicalPoint>> {
    cfg.validate()?;
    (0..cfg.trials as u64)
        .into_par_iter()
        .map(|trial| {
            sample_point(a, cfg, trial)
                .map(|z| TropicalPoint(z.iter().map(PuiseuxPoly::val).collect()))
                .ok_or(Error::RetryBudgetExhausted {
                    attempts: RETRY_BUDGET,
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::entropy_vector;
    use crate::fixtures::Fixture;
    use crate::tropical::is_member;

    #[test]
    fn identity_samples_with_unit_coefficients() {
        let cfg = SampleConfig {
            max_exponent: 0,
            support_size: 1,
            trials: 20,
            ..SampleConfig::default()
        };
        let pts = sample_lattice_valuation(&LatticeMatrix::identity(2), &cfg).unwrap();
        assert!(pts.iter().all(|p| *p == TropicalPoint::from_ints(&[0, 0])));
    }

    #[test]
    fn staircase_samples_are_members() {
        let a = Fixture::Staircase.matrix();
        let h = entropy_vector(&a).unwrap();
        let cfg = SampleConfig::default().with_trials(300).with_seed(7);
        for p in sample_lattice_valuation(&a, &cfg).unwrap() {
            assert!(is_member(&h, &p).unwrap(), "{p}");
        }
    }

    #[test]
    fn skew_combination_by_hand() {
        let a = Fixture::Skew.matrix();
        let y = vec![PuiseuxPoly::one(), "t".parse().unwrap()];
        let z = a.combine_rows(&y);
        let v: Vec<_> = z.iter().map(PuiseuxPoly::val).collect();
        assert_eq!(TropicalPoint(v), TropicalPoint::from_ints(&[0, 0, 0]));
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = Fixture::Planar.matrix();
        let cfg = SampleConfig::default().with_trials(50).with_seed(3);
        assert_eq!(
            sample_lattice_valuation(&a, &cfg).unwrap(),
            sample_lattice_valuation(&a, &cfg).unwrap()
        );
    }

    #[test]
    fn empty_pool_is_rejected() {
        let cfg = SampleConfig {
            coefficient_pool: 0,
            ..SampleConfig::default()
        };
        assert!(sample_lattice_valuation(&LatticeMatrix::identity(2), &cfg).is_err());
    }
}
