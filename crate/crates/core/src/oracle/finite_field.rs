//! Monte Carlo survival counts over `𝔽_p((t^{1/N}))`.
//!
//! A uniform `y ∈ (𝔽_p[[t^{1/N}]] / t^T)^r` gives a Haar-uniform point `y·A`
//! of the lattice. The event `val(y·A) ≥ v` only reads coefficients below `v`,
//! so it is decided exactly once `T` clears `v` plus the most negative
//! exponent of `A`.

use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;

use super::trial_rng;
use crate::error::{Error, Result};
use crate::ext::{rational_to_f64, Rational};
use crate::lattice::LatticeMatrix;
use crate::series::fp::{FpContext, FpPuiseuxPoly};
use crate::tropical::phi_rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FfConfig {
    pub prime: u64,
    pub truncation: Rational,
    pub denominator: u64,
    pub trials: usize,
    pub seed: u64,
}

impl FfConfig {
    pub fn new(prime: u64, truncation: i64, trials: usize, seed: u64) -> Self {
        Self {
            prime,
            truncation: Rational::from_integer(truncation.into()),
            denominator: 1,
            trials,
            seed,
        }
    }

    fn context(&self) -> Result<FpContext> {
        if self.trials < 1 {
            return Err(Error::InvalidArgument("trials must be positive".into()));
        }
        if self.truncation < Rational::from_integer(1.into()) {
            return Err(Error::InvalidArgument("truncation must be at least 1".into()));
        }
        FpContext::new(self.prime, self.denominator, self.truncation.clone())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalEstimate {
    pub point: Vec<Rational>,
    pub hits: usize,
    pub trials: usize,
    pub empirical: f64,
    /// `p^{−N·φ(v)}`.
    pub exact: f64,
}

impl SurvivalEstimate {
    /// Binomial standard deviation of the empirical fraction under the exact value.
    pub fn sigma(&self) -> f64 {
        (self.exact * (1.0 - self.exact) / self.trials as f64).sqrt()
    }

    pub fn within(&self, sigmas: f64) -> bool {
        (self.empirical - self.exact).abs() <= sigmas * self.sigma()
    }
}

/// `A` reduced mod `p`, with the grid slot of its lowest exponent.
struct Reduced {
    ctx: FpContext,
    rows: Vec<Vec<FpPuiseuxPoly>>,
    low_slot: i64,
}

impl Reduced {
    fn new(a: &LatticeMatrix, cfg: &FfConfig) -> Result<Self> {
        let ctx = cfg.context()?;
        let rows = a
            .rows()
            .iter()
            .map(|row| row.iter().map(|f| FpPuiseuxPoly::from_puiseux(f, &ctx)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        let low_slot = ctx.exponent_slot(&a.min_valuation())?.min(0);
        Ok(Self { ctx, rows, low_slot })
    }

    /// Slot bounds for `v`, checked against the truncation.
    fn thresholds(&self, v: &[Rational]) -> Result<Vec<i64>> {
        let slots = v
            .iter()
            .map(|x| self.ctx.exponent_slot(x))
            .collect::<Result<Vec<_>>>()?;
        let need = slots.iter().copied().max().unwrap_or(0) - self.low_slot;
        if need > self.ctx.slot_bound {
            return Err(Error::TruncationTooSmall {
                truncation: self.ctx.truncation.to_string(),
                required: self.ctx.slot_exponent(need).to_string(),
            });
        }
        Ok(slots)
    }

    /// Valuation slots of `y·A` for one random `y`; `None` marks "vanishes below `T`".
    fn sample(&self, rng: &mut impl Rng) -> Vec<Option<i64>> {
        let p = self.ctx.prime;
        let len = self.ctx.slot_bound.max(0) as usize;
        let y: Vec<FpPuiseuxPoly> = self
            .rows
            .iter()
            .map(|_| {
                let coeffs = (0..len).map(|_| rng.gen_range(0..p)).collect();
                FpPuiseuxPoly::from_slots(&self.ctx, 0, coeffs)
            })
            .collect();
        let n = self.rows.first().map_or(0, Vec::len);
        (0..n)
            .map(|j| {
                y.iter()
                    .zip(&self.rows)
                    .fold(FpPuiseuxPoly::zero(&self.ctx), |acc, (yi, row)| acc.add(&yi.mul(&row[j])))
                    .val_slot()
            })
            .collect()
    }
}

fn survives(vals: &[Option<i64>], thresholds: &[i64]) -> bool {
    vals.iter()
        .zip(thresholds)
        .all(|(v, t)| v.is_none_or(|s| s >= *t))
}

fn exact_survival(a: &LatticeMatrix, cfg: &FfConfig, v: &[Rational]) -> Result<f64> {
    let h = crate::entropy::entropy_vector(a)?;
    let phi = phi_rational(&h, v)?.value;
    let scaled = rational_to_f64(&(phi * Rational::from_integer(cfg.denominator.into())));
    Ok((cfg.prime as f64).powf(-scaled))
}

/// Empirical and exact survival at every point of `grid`, all from one set of samples.
pub fn ff_survival_grid(
    a: &LatticeMatrix,
    grid: &[Vec<Rational>],
    cfg: &FfConfig,
) -> Result<Vec<SurvivalEstimate>> {
    let reduced = Reduced::new(a, cfg)?;
    let thresholds = grid
        .iter()
        .map(|v| {
            if v.len() != a.n() {
                return Err(Error::DimensionMismatch {
                    expected: a.n(),
                    got: v.len(),
                });
            }
            reduced.thresholds(v)
        })
        .collect::<Result<Vec<_>>>()?;
    let hits = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|trial| {
            let vals = reduced.sample(&mut trial_rng(cfg.seed, trial));
            thresholds
                .iter()
                .map(|t| usize::from(survives(&vals, t)))
                .collect::<Vec<_>>()
        })
        .reduce(
            || vec![0; grid.len()],
            |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        );
    grid.iter()
        .zip(hits)
        .map(|(v, hits)| {
            Ok(SurvivalEstimate {
                point: v.clone(),
                hits,
                trials: cfg.trials,
                empirical: hits as f64 / cfg.trials as f64,
                exact: exact_survival(a, cfg, v)?,
            })
        })
        .collect()
}

pub fn ff_survival(a: &LatticeMatrix, v: &[Rational], cfg: &FfConfig) -> Result<SurvivalEstimate> {
    let mut out = ff_survival_grid(a, &[v.to_vec()], cfg)?;
    Ok(out.remove(0))
}

/// Integer points of `{0,…,k}^n` in lexicographic order.
pub fn cube_grid(n: usize, k: i64) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |x| {
                    let mut q = p.clone();
                    q.push(Rational::from_integer(x.into()));
                    q
                })
            })
            .collect();
    }
    out
}

/// Number of trials, among `cfg.trials`, whose valuation vector equals `target` exactly.
pub fn ff_hit_count(a: &LatticeMatrix, target: &[Rational], cfg: &FfConfig) -> Result<usize> {
    let reduced = Reduced::new(a, cfg)?;
    let slots = reduced.thresholds(target)?;
    let count = (0..cfg.trials as u64)
        .into_par_iter()
        .filter(|&trial| {
            let vals = reduced.sample(&mut trial_rng(cfg.seed, trial));
            vals.iter().zip(&slots).all(|(v, s)| *v == Some(*s))
        })
        .count();
    Ok(count)
}

/// Index of the first trial whose valuation vector equals `target`, if any.
pub fn ff_first_hit(a: &LatticeMatrix, target: &[Rational], cfg: &FfConfig) -> Result<Option<usize>> {
    let reduced = Reduced::new(a, cfg)?;
    let slots = reduced.thresholds(target)?;
    Ok((0..cfg.trials as u64)
        .find(|&trial| {
            let vals = reduced.sample(&mut trial_rng(cfg.seed, trial));
            vals.iter().zip(&slots).all(|(v, s)| *v == Some(*s))
        })
        .and_then(|t| t.to_usize()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::rat;
    use crate::fixtures::Fixture;

    #[test]
    fn identity_survival_at_one_one() {
        let cfg = FfConfig::new(5, 3, 20_000, 1);
        let est = ff_survival(&LatticeMatrix::identity(2), &[rat(1), rat(1)], &cfg).unwrap();
        assert!((est.exact - 0.04).abs() < 1e-15);
        assert!(est.within(3.0), "{est:?}");
    }

    #[test]
    fn origin_always_survives() {
        let cfg = FfConfig::new(101, 10, 500, 2);
        let est = ff_survival(&Fixture::Staircase.matrix(), &[rat(0), rat(0), rat(0)], &cfg).unwrap();
        assert_eq!(est.exact, 1.0);
        assert_eq!(est.hits, 500);
    }

    #[test]
    fn planar_exact_value() {
        let cfg = FfConfig::new(101, 10, 10, 0);
        let est = ff_survival(&Fixture::Planar.matrix(), &[rat(1), rat(1)], &cfg).unwrap();
        assert!((est.exact - 1.0 / 101.0).abs() < 1e-15);
    }

    #[test]
    fn guards() {
        let a = Fixture::Staircase.matrix();
        let cfg = FfConfig::new(101, 2, 10, 0);
        assert!(matches!(
            ff_survival(&a, &[rat(3), rat(0), rat(0)], &cfg),
            Err(Error::TruncationTooSmall { .. })
        ));
        let half = LatticeMatrix::parse(&[vec!["1/5", "1"]]).unwrap();
        assert_eq!(
            ff_survival(&half, &[rat(0), rat(0)], &FfConfig::new(5, 2, 10, 0)),
            Err(Error::DenominatorDivisibleByPrime { prime: 5 })
        );
        assert!(ff_survival(&a, &[rat(0), rat(0), rat(0)], &FfConfig::new(4, 2, 10, 0)).is_err());
    }

    #[test]
    fn grid_is_lexicographic() {
        let g = cube_grid(2, 1);
        assert_eq!(g, vec![vec![rat(0), rat(0)], vec![rat(0), rat(1)], vec![rat(1), rat(0)], vec![rat(1), rat(1)]]);
    }
}
