//! Triangularization over `𝒪_K` and lattice points realizing the generators `u_J`.
//!
//! Elimination is fraction-free: to clear `a` below a pivot `p = t^α·w` with
//! `w` a unit, the row is multiplied by `w` and `(a·t^{−α})·pivot_row` is
//! subtracted. Both steps are invertible over `𝒪_K`, so the result spans the
//! same lattice and no power series inverse is ever expanded.

use std::collections::BTreeMap;

use super::sampling::{random_coefficient, SampleConfig, RETRY_BUDGET};
use super::trial_rng;
use crate::entropy::EntropyVector;
use crate::error::{Error, Result};
use crate::ext::{ExtRational, Rational};
use crate::lattice::LatticeMatrix;
use crate::series::PuiseuxPoly;
use crate::subset::{self, Subset};
use crate::tropical::TropicalPoint;

/// `U·A` with the columns `cols` (in the given order) upper-triangular: row `k`
/// carries the pivot of `cols[k]` and every row below it vanishes there.
pub fn hermite_reduce(a: &LatticeMatrix, cols: &[usize]) -> Result<LatticeMatrix> {
    if cols.len() > a.r() {
        return Err(Error::RankDeficient {
            column: cols[a.r()] + 1,
        });
    }
    let mut m = a.clone();
    for (k, &c) in cols.iter().enumerate() {
        let pivot = (k..m.r())
            .filter(|&i| !m.entry(i, c).is_zero())
            .min_by(|&i, &j| m.entry(i, c).val().cmp(&m.entry(j, c).val()).then(i.cmp(&j)))
            .ok_or(Error::RankDeficient { column: c + 1 })?;
        m.swap_rows(k, pivot);
        let p = m.entry(k, c).clone();
        let alpha = p.val().into_finite().expect("nonzero pivot");
        let unit = p.shift(&-alpha.clone());
        for i in k + 1..m.r() {
            if m.entry(i, c).is_zero() {
                continue;
            }
            let factor = -m.entry(i, c).shift(&-alpha.clone());
            m.scale_row(i, &unit);
            m.add_row_multiple(i, k, &factor);
            debug_assert!(m.entry(i, c).is_zero());
        }
    }
    Ok(m)
}

/// A lattice element `x` with `x_j = 0` on `J` and `val(x_j) = h_{J∪j} − h_J` elsewhere.
pub fn witness_for_generator(
    a: &LatticeMatrix,
    h: &EntropyVector,
    j: Subset,
    cfg: &SampleConfig,
) -> Result<Vec<PuiseuxPoly>> {
    let n = a.n();
    let hj = h.get(j).finite().cloned().ok_or_else(|| Error::InfiniteEntropy {
        subset: subset::key(j, n),
    })?;
    let cols: Vec<usize> = subset::elements(j).collect();
    let reduced = hermite_reduce(a, &cols)?;
    let target: Vec<ExtRational> = (0..n)
        .map(|c| {
            if subset::contains(j, c) {
                ExtRational::Infinity
            } else {
                h.get(j | 1 << c).sub_finite(&hj)
            }
        })
        .collect();
    let free_rows: Vec<&[PuiseuxPoly]> = (cols.len()..reduced.r()).map(|i| reduced.row(i)).collect();
    if free_rows.is_empty() {
        let x = vec![PuiseuxPoly::zero(); n];
        return if target.iter().all(ExtRational::is_infinite) {
            Ok(x)
        } else {
            Err(Error::InvalidArgument("entropy vector does not match the matrix".into()))
        };
    }
    let mut rng = trial_rng(cfg.seed, u64::from(j));
    for _ in 0..RETRY_BUDGET {
        let coeffs: Vec<Rational> = free_rows
            .iter()
            .map(|_| random_coefficient(&mut rng, cfg.coefficient_pool))
            .collect();
        let x: Vec<PuiseuxPoly> = (0..n)
            .map(|c| {
                free_rows
                    .iter()
                    .zip(&coeffs)
                    .fold(PuiseuxPoly::zero(), |acc, (row, k)| &acc + &row[c].scale(k))
            })
            .collect();
        if x.iter().map(PuiseuxPoly::val).eq(target.iter().cloned()) {
            return Ok(x);
        }
    }
    Err(Error::RetryBudgetExhausted {
        attempts: RETRY_BUDGET,
    })
}

/// Witness valuations for every finite generator, keyed like [`crate::tropical::generators`].
pub fn generator_witnesses(
    a: &LatticeMatrix,
    h: &EntropyVector,
    cfg: &SampleConfig,
) -> Result<BTreeMap<Subset, TropicalPoint>> {
    let full = subset::full(a.n());
    h.finite_subsets()
        .filter(|&s| s != full)
        .map(|s| {
            let x = witness_for_generator(a, h, s, cfg)?;
            Ok((s, TropicalPoint(x.iter().map(PuiseuxPoly::val).collect())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::entropy_vector;
    use crate::fixtures::Fixture;
    use crate::tropical::generators;

    #[test]
    fn identity_is_already_reduced() {
        let a = LatticeMatrix::identity(3);
        assert_eq!(hermite_reduce(&a, &[0]).unwrap(), a);
    }

    #[test]
    fn skew_first_column_is_triangular() {
        let a = Fixture::Skew.matrix();
        assert_eq!(hermite_reduce(&a, &[0]).unwrap(), a);
    }

    #[test]
    fn planar_first_column_is_cleared() {
        let a = Fixture::Planar.matrix();
        let m = hermite_reduce(&a, &[0]).unwrap();
        assert!(m.entry(0, 0).is_unit());
        assert!(m.entry(1, 0).is_zero());
        assert_eq!(entropy_vector(&m).unwrap(), entropy_vector(&a).unwrap());
        // the cleared row's second entry is the determinant, of valuation h_12 − h_1
        assert_eq!(m.entry(1, 1).val(), ExtRational::int(3));
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let a = LatticeMatrix::parse(&[vec!["1", "1"], vec!["1", "1+t"]]).unwrap();
        assert!(hermite_reduce(&a, &[0, 1]).is_ok());
        let thin = LatticeMatrix::parse(&[vec!["1", "1", "1"]]).unwrap();
        assert_eq!(hermite_reduce(&thin, &[0, 1]), Err(Error::RankDeficient { column: 2 }));
    }

    #[test]
    fn witnesses_match_generators_on_worked_examples() {
        let cfg = SampleConfig::default().with_seed(11);
        for f in Fixture::ALL {
            let a = f.matrix();
            let h = entropy_vector(&a).unwrap();
            assert_eq!(generator_witnesses(&a, &h, &cfg).unwrap(), generators(&h), "{f}");
        }
    }

    #[test]
    fn skew_witness_is_second_row() {
        let a = Fixture::Skew.matrix();
        let h = entropy_vector(&a).unwrap();
        let x = witness_for_generator(&a, &h, 0b001, &SampleConfig::default()).unwrap();
        let v: Vec<_> = x.iter().map(PuiseuxPoly::val).collect();
        assert_eq!(TropicalPoint(v), "inf,4,2".parse().unwrap());
    }
}
