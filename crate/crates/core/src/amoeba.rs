//! Amoebas `𝒜_t = Log_t(𝔻^r · A(t))` and their distance to `|Σ_L|`.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ext::rational_to_f64;
use crate::lattice::LatticeMatrix;
use crate::oracle::trial_rng;
use crate::polyhedral::{Complex, HPolyhedron};

/// Moduli below this are treated as zero before taking logarithms.
pub const ZERO_GUARD: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub struct AmoebaCloud {
    pub t: f64,
    pub seed: u64,
    /// Number of `y` drawn; degenerate draws are skipped, so `points` may be shorter.
    pub requested: usize,
    pub points: Vec<Vec<f64>>,
}

impl AmoebaCloud {
    /// `λ = −log t`.
    pub fn lambda(&self) -> f64 {
        -self.t.ln()
    }
}

/// `A(t)` as a real matrix.
pub fn evaluate(a: &LatticeMatrix, t: f64) -> Vec<Vec<f64>> {
    a.rows()
        .iter()
        .map(|row| row.iter().map(|f| f.eval_real(t)).collect())
        .collect()
}

fn log_image(at: &[Vec<f64>], t: f64, y: &[Complex64]) -> Option<Vec<f64>> {
    let n = at.first().map_or(0, Vec::len);
    let log_t = t.ln();
    (0..n)
        .map(|j| {
            let z: Complex64 = y.iter().zip(at).map(|(yi, row)| yi * row[j]).sum();
            let m = z.norm();
            (m >= ZERO_GUARD).then(|| m.ln() / log_t)
        })
        .collect()
}

/// `Log_t(y·A(t))`, or `None` when some coordinate vanishes.
pub fn log_t_image(a: &LatticeMatrix, t: f64, y: &[Complex64]) -> Option<Vec<f64>> {
    log_image(&evaluate(a, t), t, y)
}

fn unit_disk(rng: &mut impl Rng) -> Complex64 {
    loop {
        let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm_sqr() < 1.0 {
            return z;
        }
    }
}

/// `count` draws of `y` uniform on the polydisk `𝔻^r`, one generator per draw.
pub fn sample_amoeba(a: &LatticeMatrix, t: f64, count: usize, seed: u64) -> Result<AmoebaCloud> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidArgument(format!("t = {t} must lie in (0, 1)")));
    }
    let at = evaluate(a, t);
    let points = (0..count as u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = trial_rng(seed, i);
            let y: Vec<Complex64> = (0..a.r()).map(|_| unit_disk(&mut rng)).collect();
            log_image(&at, t, &y)
        })
        .collect();
    Ok(AmoebaCloud {
        t,
        seed,
        requested: count,
        points,
    })
}

/// A polyhedron with float data: `eq` rows hold with equality, `le` rows as `a·x ≤ b`.
#[derive(Debug, Clone)]
pub struct FloatCell {
    eq: Vec<(Vec<f64>, f64)>,
    le: Vec<(Vec<f64>, f64)>,
}

impl FloatCell {
    pub fn new(p: &HPolyhedron) -> Self {
        let conv = |c: &crate::polyhedral::Constraint| {
            (c.a.iter().map(rational_to_f64).collect(), rational_to_f64(&c.b))
        };
        Self {
            eq: p.equalities.iter().map(conv).collect(),
            le: p.inequalities.iter().map(conv).collect(),
        }
    }

    fn feasible(&self, x: &[f64], tol: f64) -> bool {
        self.le.iter().all(|(a, b)| dot(a, x) <= b + tol)
            && self.eq.iter().all(|(a, b)| (dot(a, x) - b).abs() <= tol)
    }

    /// Euclidean distance from `x`: the nearest point is the projection onto the
    /// affine hull of some face, so every set of at most `n` tight rows is tried.
    pub fn distance(&self, x: &[f64]) -> f64 {
        const TOL: f64 = 1e-9;
        if self.feasible(x, TOL) {
            return 0.0;
        }
        let n = x.len();
        let mut best = f64::INFINITY;
        let m = self.le.len();
        let max_extra = n.saturating_sub(self.eq.len()).min(m);
        let mut chosen = Vec::with_capacity(n);
        for k in 0..=max_extra {
            subsets(m, k, &mut chosen, 0, &mut |s| {
                let rows: Vec<&(Vec<f64>, f64)> = self.eq.iter().chain(s.iter().map(|&i| &self.le[i])).collect();
                if let Some(y) = project(x, &rows) {
                    if self.feasible(&y, TOL) {
                        best = best.min(dist(x, &y));
                    }
                }
            });
        }
        best
    }
}

fn subsets(m: usize, k: usize, chosen: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    for i in start..m {
        chosen.push(i);
        subsets(m, k, chosen, i + 1, f);
        chosen.pop();
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Orthogonal projection of `x` onto `{y : a·y = b for each row}`; `None` if the rows are dependent.
fn project(x: &[f64], rows: &[&(Vec<f64>, f64)]) -> Option<Vec<f64>> {
    let k = rows.len();
    if k == 0 {
        return Some(x.to_vec());
    }
    // Solve (M Mᵀ) w = M x − c, then y = x − Mᵀ w.
    let mut g: Vec<Vec<f64>> = rows
        .iter()
        .map(|(ai, bi)| {
            let mut r: Vec<f64> = rows.iter().map(|(aj, _)| dot(ai, aj)).collect();
            r.push(dot(ai, x) - bi);
            r
        })
        .collect();
    for c in 0..k {
        let p = (c..k).max_by(|&i, &j| g[i][c].abs().total_cmp(&g[j][c].abs()))?;
        if g[p][c].abs() < 1e-12 {
            return None;
        }
        g.swap(c, p);
        let pivot = g[c].clone();
        for (i, row) in g.iter_mut().enumerate() {
            if i != c {
                let f = row[c] / pivot[c];
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= f * p;
                }
            }
        }
    }
    let w: Vec<f64> = (0..k).map(|i| g[i][k] / g[i][i]).collect();
    Some(
        x.iter()
            .enumerate()
            .map(|(d, xd)| xd - rows.iter().zip(&w).map(|((a, _), wi)| a[d] * wi).sum::<f64>())
            .collect(),
    )
}

/// Float descriptions of the maximal cells of `Σ_L`, whose union is `|Σ_L|`.
pub fn sigma_cells(sigma: &Complex) -> Result<Vec<FloatCell>> {
    let ids = sigma.sigma_maximal_ids();
    if ids.is_empty() {
        return Err(Error::EmptyComplex);
    }
    Ok(ids.iter().map(|&i| FloatCell::new(&sigma.cells[i].hrep)).collect())
}

pub fn point_distance(cells: &[FloatCell], x: &[f64]) -> f64 {
    cells.iter().map(|c| c.distance(x)).fold(f64::INFINITY, f64::min)
}

/// Per-point distances to `|Σ_L|`, in cloud order.
pub fn distances(cloud: &AmoebaCloud, sigma: &Complex) -> Result<Vec<f64>> {
    let cells = sigma_cells(sigma)?;
    Ok(cloud.points.par_iter().map(|x| point_distance(&cells, x)).collect())
}

/// One-sided Hausdorff distance `max_{x ∈ cloud} d(x, |Σ_L|)`; zero for an empty cloud.
pub fn distance_to_sigma(cloud: &AmoebaCloud, sigma: &Complex) -> Result<f64> {
    Ok(distances(cloud, sigma)?.into_iter().fold(0.0, f64::max))
}

fn softplus(s: f64) -> f64 {
    if s > 30.0 {
        s + (-s).exp().ln_1p()
    } else {
        s.exp().ln_1p()
    }
}

/// Largest violation of the closed-form description of the amoeba of
/// `[[1,1],[0,t]]` at `λ = −log t`: `x ≥ 0`,
/// `y ≥ x − log(1 + e^{λ(x−1)})/λ`, and for `x < 1`
/// `y ≤ x − log(1 − e^{λ(x−1)})/λ`. Non-positive means the point satisfies all three.
pub fn corner_region_violation(p: &[f64], lambda: f64) -> f64 {
    let (x, y) = (p[0], p[1]);
    let s = lambda * (x - 1.0);
    let lower = x - softplus(s) / lambda;
    let mut worst = (-x).max(lower - y);
    if x < 1.0 {
        let upper = x - (-s.exp_m1()).ln() / lambda;
        worst = worst.max(y - upper);
    }
    worst
}
