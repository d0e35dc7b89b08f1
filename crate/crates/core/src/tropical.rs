//! The entropy polynomial `φ(v) = max_J (v_J − h_J)`, membership in `|Σ_L|`,
//! min-plus semimodule arithmetic and the generators `u_J`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::entropy::EntropyVector;
use crate::error::{Error, Result};
use crate::ext::{ExtRational, Rational};
use crate::subset::{self, Subset};

/// A point of `(ℚ ∪ {∞})^n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TropicalPoint(pub Vec<ExtRational>);

impl TropicalPoint {
    pub fn finite(coords: &[Rational]) -> Self {
        Self(coords.iter().cloned().map(ExtRational::Finite).collect())
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| ExtRational::int(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All coordinates, or the index of the first infinite one.
    pub fn to_finite(&self) -> Result<Vec<Rational>> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, x)| x.finite().cloned().ok_or(Error::NonFinite { index: i }))
            .collect()
    }
}

impl fmt::Display for TropicalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for TropicalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Comma-separated coordinates, optionally parenthesized: `"0,1/2,inf"`.
impl FromStr for TropicalPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        inner
            .split(',')
            .map(|part| {
                part.parse::<ExtRational>()
                    .map_err(|_| Error::InvalidArgument(format!("bad coordinate {:?}", part.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(TropicalPoint)
    }
}

/// `v_J` for every subset, built by peeling off the lowest element.
fn subset_sums(v: &[Rational]) -> Vec<Rational> {
    let size = 1usize << v.len();
    let mut sums = vec![Rational::zero(); size];
    for s in 1..size {
        let low = s.trailing_zeros() as usize;
        sums[s] = &sums[s & (s - 1)] + &v[low];
    }
    sums
}

/// Value of `φ` and the monomials attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiValue {
    pub value: Rational,
    pub active: Vec<Subset>,
}

impl PhiValue {
    pub fn union(&self) -> Subset {
        self.active.iter().fold(0, |acc, s| acc | s)
    }
}

fn check_len(h: &EntropyVector, len: usize) -> Result<()> {
    if h.n() != len {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            got: len,
        });
    }
    Ok(())
}

/// `φ` on a finite rational point.
pub fn phi_rational(h: &EntropyVector, v: &[Rational]) -> Result<PhiValue> {
    check_len(h, v.len())?;
    let sums = subset_sums(v);
    let mut best: Option<Rational> = None;
    let mut active = Vec::new();
    for s in h.finite_subsets() {
        let hs = h.get(s).finite().expect("finite subset");
        let value = &sums[s as usize] - hs;
        match &best {
            Some(b) if &value < b => {}
            Some(b) if &value == b => active.push(s),
            _ => {
                best = Some(value);
                active = vec![s];
            }
        }
    }
    Ok(PhiValue {
        value: best.expect("the empty set always competes"),
        active,
    })
}

pub fn phi_eval(h: &EntropyVector, v: &TropicalPoint) -> Result<PhiValue> {
    phi_rational(h, &v.to_finite()?)
}

/// All monomial values `v_J − h_J` for finite `h_J`, ascending by mask.
pub fn monomial_values(h: &EntropyVector, v: &[Rational]) -> Vec<(Subset, Rational)> {
    let sums = subset_sums(v);
    h.finite_subsets()
        .map(|s| (s, &sums[s as usize] - h.get(s).finite().expect("finite")))
        .collect()
}

/// `φ` in floating point, for numerical layers.
pub fn phi_f64(h: &EntropyVector, v: &[f64]) -> f64 {
    let hf: Vec<f64> = h.values().iter().map(ExtRational::to_f64).collect();
    phi_f64_with(&hf, v)
}

/// `φ` given the entropy vector already converted to floats (`∞` entries skipped).
pub fn phi_f64_with(h: &[f64], v: &[f64]) -> f64 {
    let mut sums = vec![0.0; h.len()];
    let mut best = f64::NEG_INFINITY;
    for s in 0..h.len() {
        if s > 0 {
            sums[s] = sums[s & (s - 1)] + v[s.trailing_zeros() as usize];
        }
        if h[s].is_finite() {
            best = best.max(sums[s] - h[s]);
        }
    }
    best
}

/// Membership in `|Σ_L|`: the active monomials together cover `[n]`.
pub fn is_member(h: &EntropyVector, v: &TropicalPoint) -> Result<bool> {
    is_member_rational(h, &v.to_finite()?)
}

pub fn is_member_rational(h: &EntropyVector, v: &[Rational]) -> Result<bool> {
    Ok(phi_rational(h, v)?.union() == subset::full(h.n()))
}

/// Step size for the directional test: half the smallest positive gap between
/// distinct monomial values, or 1 when all monomials tie.
pub fn directional_step(h: &EntropyVector, v: &[Rational]) -> Rational {
    let mut values: Vec<Rational> = monomial_values(h, v).into_iter().map(|(_, x)| x).collect();
    values.sort();
    values.dedup();
    values
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .map(|gap| gap / Rational::from_integer(2.into()))
        .unwrap_or_else(|| Rational::from_integer(1.into()))
}

/// Membership through `φ(v + t e_j) = φ(v) + t` for every `j`.
pub fn directional_member(h: &EntropyVector, v: &TropicalPoint) -> Result<bool> {
    let v = v.to_finite()?;
    check_len(h, v.len())?;
    let base = phi_rational(h, &v)?.value;
    let t = directional_step(h, &v);
    for j in 0..v.len() {
        let mut moved = v.clone();
        moved[j] += &t;
        if phi_rational(h, &moved)?.value != &base + &t {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Componentwise minimum.
pub fn trop_add(x: &TropicalPoint, y: &TropicalPoint) -> Result<TropicalPoint> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(TropicalPoint(
        x.0.iter().zip(&y.0).map(|(a, b)| a.min_with(b)).collect(),
    ))
}

/// `λ ⊙ x`: adds `λ ≥ 0` to every coordinate.
pub fn trop_scale(lambda: &ExtRational, x: &TropicalPoint) -> Result<TropicalPoint> {
    if lambda.is_negative() {
        return Err(Error::NegativeScalar);
    }
    Ok(TropicalPoint(x.0.iter().map(|a| a + lambda).collect()))
}

/// `u_J` for every `J ⊊ [n]` with `h_J < ∞`: `u_{J,j} = h_{J∪j} − h_J` off `J`, `∞` on `J`.
pub fn generators(h: &EntropyVector) -> BTreeMap<Subset, TropicalPoint> {
    let n = h.n();
    let full = subset::full(n);
    h.finite_subsets()
        .filter(|&s| s != full)
        .map(|s| {
            let hs = h.get(s).finite().expect("finite").clone();
            let u = (0..n)
                .map(|j| {
                    if subset::contains(s, j) {
                        ExtRational::Infinity
                    } else {
                        h.get(s | 1 << j).sub_finite(&hs)
                    }
                })
                .collect();
            (s, TropicalPoint(u))
        })
        .collect()
}

/// Coefficients `λ_J = φ(x) + h_J − x_J` and the recombination `⊕_J λ_J ⊙ u_J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub lambdas: BTreeMap<Subset, Rational>,
    pub recombined: TropicalPoint,
    /// First coordinate where the recombination differs from the input, if any.
    pub mismatch: Option<usize>,
}

impl Reconstruction {
    pub fn verified(&self) -> bool {
        self.mismatch.is_none()
    }
}

pub fn reconstruct(h: &EntropyVector, x: &TropicalPoint) -> Result<Reconstruction> {
    let xs = x.to_finite()?;
    let phi = phi_rational(h, &xs)?;
    if phi.union() != subset::full(h.n()) {
        return Err(Error::NotMember);
    }
    let sums = subset_sums(&xs);
    let gens = generators(h);
    let mut lambdas = BTreeMap::new();
    let mut acc = TropicalPoint(vec![ExtRational::Infinity; xs.len()]);
    for (s, u) in &gens {
        let lambda = &phi.value + h.get(*s).finite().expect("finite") - &sums[*s as usize];
        let term = trop_scale(&ExtRational::Finite(lambda.clone()), u)?;
        acc = trop_add(&acc, &term)?;
        lambdas.insert(*s, lambda);
    }
    let mismatch = (0..xs.len()).find(|&j| acc.0[j] != x.0[j]);
    Ok(Reconstruction {
        lambdas,
        recombined: acc,
        mismatch,
    })
}

/// Restriction of `h` to the `r`-subsets.
pub fn plucker_from_entropy(h: &EntropyVector, r: usize) -> BTreeMap<Subset, ExtRational> {
    subset::of_size(h.n(), r)
        .map(|s| (s, h.get(s).clone()))
        .collect()
}

/// Tropical linear space test: for each `(r+1)`-subset `S` the minimum of
/// `p(S∖j) + w_j` over `j ∈ S` is attained at least twice.
pub fn trop_linear_member(p: &BTreeMap<Subset, ExtRational>, r: usize, w: &[Rational]) -> bool {
    let n = w.len();
    subset::of_size(n, r + 1).all(|s| {
        let values: Vec<ExtRational> = subset::elements(s)
            .map(|j| {
                let pj = p.get(&(s & !(1 << j))).cloned().unwrap_or(ExtRational::Infinity);
                &pj + &w[j]
            })
            .collect();
        let min = values.iter().min().expect("nonempty subset");
        min.is_infinite() || values.iter().filter(|v| *v == min).count() >= 2
    })
}
