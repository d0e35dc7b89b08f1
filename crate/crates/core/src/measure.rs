//! Survival functions `Q_{h,α} = exp(−α φ_h)`, inclusion–exclusion box masses,
//! and the closed-form projected densities of the Gauss–Laplace examples.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::entropy::EntropyVector;
use crate::error::{Error, Result};
use crate::ext::rational_to_f64;
use crate::oracle::trial_rng;
use crate::subset::{self, Subset};
use crate::tropical::{phi_f64_with, phi_rational};

/// Box masses above `−NUMERICAL_ZERO` count as nonnegative.
pub const NUMERICAL_ZERO: f64 = 1e-12;

/// Coordinates standing in for `±∞` when a box is pushed to a marginal.
const FAR: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalSpec {
    n: usize,
    /// `h_J` by mask; `∞` entries never compete in `φ`.
    h: Vec<f64>,
    alpha: f64,
}

impl SurvivalSpec {
    pub fn new(n: usize, h: Vec<f64>, alpha: f64) -> Result<Self> {
        if h.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                got: h.len(),
            });
        }
        if h[0] != 0.0 {
            return Err(Error::InvalidArgument("h_∅ must be 0".into()));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidArgument(format!("α = {alpha} must be positive")));
        }
        Ok(Self { n, h, alpha })
    }

    pub fn from_entropy(h: &EntropyVector, alpha: f64) -> Result<Self> {
        Self::new(h.n(), h.values().iter().map(|x| x.to_f64()).collect(), alpha)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn phi(&self, x: &[f64]) -> f64 {
        phi_f64_with(&self.h, x)
    }

    /// `Q(x) = exp(−α φ(x))`.
    pub fn q(&self, x: &[f64]) -> f64 {
        (-self.alpha * self.phi(x)).exp()
    }
}

pub fn survival_q(s: &SurvivalSpec, x: &[f64]) -> f64 {
    s.q(x)
}

/// `Q` at a rational point of an exact entropy vector, with `φ` evaluated exactly.
pub fn survival_q_exact(h: &EntropyVector, alpha: f64, x: &[crate::ext::Rational]) -> Result<f64> {
    let phi = phi_rational(h, x)?.value;
    Ok((-alpha * rational_to_f64(&phi)).exp())
}

/// Neumaier-compensated sum.
fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// `Σ_w (−1)^{#w} Q(w)` over the corners `w` of `[u, v]`, `#w` counting coordinates taken from `v`.
pub fn cube_mass(s: &SurvivalSpec, u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != s.n || v.len() != s.n {
        return Err(Error::DimensionMismatch {
            expected: s.n,
            got: u.len().max(v.len()),
        });
    }
    if let Some(i) = (0..s.n).find(|&i| u[i] >= v[i]) {
        return Err(Error::InvalidArgument(format!(
            "cube needs u < v, coordinate {} has {} ≥ {}",
            i + 1,
            u[i],
            v[i]
        )));
    }
    let corners = (0..1u32 << s.n).map(|mask| {
        let w: Vec<f64> = (0..s.n)
            .map(|i| if mask >> i & 1 == 1 { v[i] } else { u[i] })
            .collect();
        let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        sign * s.q(&w)
    });
    Ok(compensated_sum(corners))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NegativeCube {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub mass: f64,
}

/// The witness box for `h_12 < h_1 + h_2`: after the shift `x_i → x_i − h_i` it is
/// `[(h′,h′), (0,0)]` with `h′ = h_12 − h_1 − h_2`, of mass `e^{αh′} − 1`.
pub fn find_negative_cube_n2(s: &SurvivalSpec) -> Result<NegativeCube> {
    if s.n != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: s.n,
        });
    }
    let (h1, h2, h12) = (s.h[1], s.h[2], s.h[3]);
    let gap = h12 - h1 - h2;
    if gap.is_nan() || gap >= 0.0 {
        return Err(Error::Supermodular);
    }
    let u = vec![gap + h1, gap + h2];
    let v = vec![h1, h2];
    let mass = cube_mass(s, &u, &v)?;
    Ok(NegativeCube { u, v, mass })
}

/// Subsets `I` and indices `i < j` outside `I` with `h_{Ii} + h_{Ij} > h_I + h_{Iij}`.
pub fn local_violations(s: &SurvivalSpec) -> Vec<(Subset, usize, usize)> {
    let mut out = Vec::new();
    for base in 0..(1 as Subset) << s.n {
        for i in 0..s.n {
            for j in i + 1..s.n {
                if subset::contains(base, i) || subset::contains(base, j) {
                    continue;
                }
                let (bi, bj, bij) = (base | 1 << i, base | 1 << j, base | 1 << i | 1 << j);
                let lhs = s.h[bi as usize] + s.h[bj as usize];
                let rhs = s.h[base as usize] + s.h[bij as usize];
                if lhs.is_finite() && rhs.is_finite() && lhs > rhs {
                    out.push((base, i, j));
                }
            }
        }
    }
    out
}

/// A box of negative mass for a non-supermodular `h`, following the conditioning argument:
/// coordinates in `I` range over `[A, FAR]`, coordinates outside `I ∪ {i, j}` over
/// `[−FAR, FAR]`, and `(x_i, x_j)` over the two-dimensional witness of the conditioned
/// survival function `exp(−max(0, x_i − h_{Ii} + h_I, x_j − h_{Ij} + h_I, x_i + x_j − h_{Iij} + h_I))`.
pub fn find_negative_cube(s: &SurvivalSpec) -> Result<NegativeCube> {
    let (base, i, j) = *local_violations(s).first().ok_or(Error::Supermodular)?;
    let h = |m: Subset| s.h[m as usize];
    let hi = h(base | 1 << i) - h(base);
    let hj = h(base | 1 << j) - h(base);
    let gap = h(base | 1 << i | 1 << j) - h(base) - hi - hj;
    let spread = s.h.iter().filter(|x| x.is_finite()).fold(0.0f64, |m, x| m.max(x.abs()));
    let mut threshold = 10.0 + 4.0 * spread + gap.abs();
    let mut last = None;
    for _ in 0..8 {
        let mut u = vec![-FAR; s.n];
        let mut v = vec![FAR; s.n];
        for k in subset::elements(base) {
            u[k] = threshold;
        }
        u[i] = gap + hi;
        v[i] = hi;
        u[j] = gap + hj;
        v[j] = hj;
        let mass = cube_mass(s, &u, &v)?;
        if mass < 0.0 {
            return Ok(NegativeCube { u, v, mass });
        }
        last = Some(mass);
        threshold *= 2.0;
    }
    Err(Error::InvalidArgument(format!(
        "conditioning construction did not produce a negative box (last mass {})",
        last.unwrap_or(f64::NAN)
    )))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub trials: usize,
    pub box_radius: f64,
    pub min_mass: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    /// Boxes with mass below `−NUMERICAL_ZERO`.
    pub negative: usize,
}

impl ScanReport {
    pub fn consistent(&self) -> bool {
        self.negative == 0
    }
}

fn random_cube(rng: &mut impl Rng, n: usize, radius: f64) -> (Vec<f64>, Vec<f64>) {
    // Corners on the grid (1/64)ℤ so that the boxes are rational.
    let steps = (radius * 64.0).floor() as i64;
    let mut u = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        let a = rng.gen_range(-steps..steps);
        let b = rng.gen_range(a + 1..=steps);
        u.push(a as f64 / 64.0);
        v.push(b as f64 / 64.0);
    }
    (u, v)
}

/// Random boxes inside `[−R, R]^n`; reports the smallest mass seen. This probes the
/// open question of whether `Q` is a survival function and asserts nothing.
pub fn positivity_scan(s: &SurvivalSpec, trials: usize, box_radius: f64, seed: u64) -> Result<ScanReport> {
    if trials < 1 || box_radius.is_nan() || box_radius <= 0.0 {
        return Err(Error::InvalidArgument("scan needs trials ≥ 1 and a positive radius".into()));
    }
    let masses: Vec<(f64, Vec<f64>, Vec<f64>)> = (0..trials as u64)
        .into_par_iter()
        .map(|k| {
            let (u, v) = random_cube(&mut trial_rng(seed, k), s.n, box_radius);
            let m = cube_mass(s, &u, &v).expect("valid cube");
            (m, u, v)
        })
        .collect();
    let negative = masses.iter().filter(|(m, _, _)| *m < -NUMERICAL_ZERO).count();
    let (min_mass, u, v) = masses
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("trials ≥ 1");
    Ok(ScanReport {
        trials,
        box_radius,
        min_mass,
        u,
        v,
        negative,
    })
}

/// Closed-form densities of the projections to `ℝ^n/ℝ1` in the worked examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjectedDensity {
    /// `[[1,1],[0,t]]`: `(1 − e^{−a})δ₀ + (a e^{−a}/2) e^{−a|u|} du`.
    LaplaceMixture,
    /// `𝒪³`: `(α²/3) exp(−α max(u+v, v−2u, u−2v)) du dv`.
    ExponentialTriple,
    /// The tropical line: `(α/3) e^{−αt} dt` on each of three rays.
    TropicalLine,
}

impl ProjectedDensity {
    pub const ALL: [ProjectedDensity; 3] = [
        ProjectedDensity::LaplaceMixture,
        ProjectedDensity::ExponentialTriple,
        ProjectedDensity::TropicalLine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProjectedDensity::LaplaceMixture => "laplace-mixture",
            ProjectedDensity::ExponentialTriple => "exponential-triple",
            ProjectedDensity::TropicalLine => "tropical-line",
        }
    }

    /// Number of coordinates of an evaluation point.
    pub fn arity(self) -> usize {
        match self {
            ProjectedDensity::ExponentialTriple => 2,
            _ => 1,
        }
    }

    /// Continuous part at `point` (`u`, `(u, v)` or the ray parameter `t`).
    pub fn density(self, alpha: f64, point: &[f64]) -> Result<f64> {
        if point.len() != self.arity() {
            return Err(Error::DimensionMismatch {
                expected: self.arity(),
                got: point.len(),
            });
        }
        Ok(match self {
            ProjectedDensity::LaplaceMixture => {
                alpha * (-alpha).exp() / 2.0 * (-alpha * point[0].abs()).exp()
            }
            ProjectedDensity::ExponentialTriple => {
                let (u, v) = (point[0], point[1]);
                let m = (u + v).max(v - 2.0 * u).max(u - 2.0 * v);
                alpha * alpha / 3.0 * (-alpha * m).exp()
            }
            ProjectedDensity::TropicalLine => {
                if point[0] < 0.0 {
                    0.0
                } else {
                    alpha / 3.0 * (-alpha * point[0]).exp()
                }
            }
        })
    }

    /// Mass of the atom at the origin.
    pub fn atom(self, alpha: f64) -> f64 {
        match self {
            ProjectedDensity::LaplaceMixture => -(-alpha).exp_m1(),
            _ => 0.0,
        }
    }
}

impl fmt::Display for ProjectedDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProjectedDensity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProjectedDensity::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::UnknownExample(s.to_string()))
    }
}

const GL5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];

/// Composite five-point Gauss–Legendre rule on `[a, b]` with `panels` equal pieces.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let h = (b - a) / panels as f64;
    compensated_sum((0..panels).flat_map(|k| {
        let mid = a + (k as f64 + 0.5) * h;
        let f = &f;
        GL5.iter().map(move |(x, w)| w * f(mid + x * h / 2.0) * h / 2.0)
    }))
}

/// Integral of the `𝒪³` density over `[−L, L]²` with `L = 40/α`, splitting the
/// inner integral at the kinks `v = 0` and `v = u`.
pub fn exponential_triple_total(alpha: f64) -> f64 {
    let l = 40.0 / alpha;
    let d = ProjectedDensity::ExponentialTriple;
    let panels = 200;
    let inner = |u: f64| {
        let mut cuts = vec![-l, 0.0_f64.min(u), 0.0_f64.max(u), l];
        cuts.dedup();
        cuts.windows(2)
            .map(|w| integrate(|v| d.density(alpha, &[u, v]).expect("arity 2"), w[0], w[1], panels))
            .sum::<f64>()
    };
    integrate(inner, -l, 0.0, panels) + integrate(inner, 0.0, l, panels)
}
