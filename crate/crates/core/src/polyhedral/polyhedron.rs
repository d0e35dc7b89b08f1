//! H-described polyhedra: feasibility, relative-interior witnesses, affine
//! dimension and desk-scale vertex/ray enumeration.

use num_traits::{One, Signed, Zero};

use super::linalg;
use super::lp::{maximize, Constraint, LpOutcome};
use crate::error::{Error, Result};
use crate::ext::Rational;

/// `{x ∈ ℚ^n : eq rows hold with equality, ineq rows satisfy a·x ≤ b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolyhedron {
    pub n: usize,
    pub equalities: Vec<Constraint>,
    pub inequalities: Vec<Constraint>,
}

/// A point in the relative interior together with the detected implicit equalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorWitness {
    pub point: Vec<Rational>,
    /// Per inequality: whether it holds with equality on the whole polyhedron.
    pub implicit: Vec<bool>,
    pub dim: usize,
}

impl HPolyhedron {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn with(n: usize, equalities: Vec<Constraint>, inequalities: Vec<Constraint>) -> Self {
        Self {
            n,
            equalities,
            inequalities,
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equalities.iter().all(|c| c.slack(x).is_zero())
            && self.inequalities.iter().all(|c| !c.slack(x).is_negative())
    }

    /// Maximizes the common slack `s ≤ 1` of the inequalities in `open`,
    /// keeping every other inequality weak and `extra_eq` as equalities.
    fn max_common_slack(&self, open: &[bool], extra_eq: &[bool]) -> Option<(Vec<Rational>, Rational)> {
        let n = self.n;
        let widen = |c: &Constraint, with_s: bool| {
            let mut a = c.a.clone();
            a.push(if with_s { Rational::one() } else { Rational::zero() });
            Constraint::new(a, c.b.clone())
        };
        let mut eq: Vec<Constraint> = self.equalities.iter().map(|c| widen(c, false)).collect();
        let mut le = Vec::new();
        for (k, c) in self.inequalities.iter().enumerate() {
            if extra_eq[k] {
                eq.push(widen(c, false));
            } else {
                le.push(widen(c, open[k]));
            }
        }
        let mut cap = vec![Rational::zero(); n + 1];
        cap[n] = Rational::one();
        le.push(Constraint::new(cap.clone(), Rational::one()));
        match maximize(&cap, &eq, &le) {
            LpOutcome::Optimal { mut x, value } => {
                x.truncate(n);
                Some((x, value))
            }
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => unreachable!("slack is capped"),
        }
    }

    /// Relative-interior point maximizing the minimum slack (capped at 1) over
    /// the non-implicit inequalities, or `None` when empty.
    pub fn relative_interior(&self) -> Option<InteriorWitness> {
        let m = self.inequalities.len();
        let all = vec![true; m];
        let none = vec![false; m];
        let (x, s) = self.max_common_slack(&all, &none)?;
        if s.is_negative() {
            return None;
        }
        let mut implicit = vec![false; m];
        let point = if s.is_positive() {
            x
        } else {
            // Only rows tight at this optimum can be implicit equalities.
            for (k, c) in self.inequalities.iter().enumerate() {
                if !c.slack(&x).is_zero() {
                    continue;
                }
                let objective: Vec<Rational> = c.a.iter().map(|a| -a).collect();
                let bounded_at_zero = match maximize(&objective, &self.equalities, &self.inequalities) {
                    LpOutcome::Optimal { value, .. } => &value + &c.b <= Rational::zero(),
                    LpOutcome::Unbounded => false,
                    LpOutcome::Infeasible => unreachable!("feasibility established above"),
                };
                implicit[k] = bounded_at_zero;
            }
            let open: Vec<bool> = implicit.iter().map(|b| !b).collect();
            let (x, s) = self
                .max_common_slack(&open, &implicit)
                .expect("feasibility established above");
            debug_assert!(s.is_positive() || open.iter().all(|o| !o));
            x
        };
        let dim = self.n - self.equality_rank(&implicit);
        Some(InteriorWitness {
            point,
            implicit,
            dim,
        })
    }

    fn equality_rank(&self, implicit: &[bool]) -> usize {
        let rows: Vec<Vec<Rational>> = self
            .equalities
            .iter()
            .map(|c| c.a.clone())
            .chain(
                self.inequalities
                    .iter()
                    .zip(implicit)
                    .filter(|(_, &imp)| imp)
                    .map(|(c, _)| c.a.clone()),
            )
            .collect();
        linalg::rank(&rows)
    }

    /// Affine dimension, `-1` for the empty set.
    pub fn affine_dim(&self) -> i64 {
        self.relative_interior().map_or(-1, |w| w.dim as i64)
    }

    /// Whether the interiors of two full-dimensional polyhedra intersect.
    pub fn interiors_overlap(&self, other: &HPolyhedron) -> bool {
        let joint = HPolyhedron::with(
            self.n,
            self.equalities.iter().chain(&other.equalities).cloned().collect(),
            self.inequalities.iter().chain(&other.inequalities).cloned().collect(),
        );
        let all = vec![true; joint.inequalities.len()];
        let none = vec![false; joint.inequalities.len()];
        matches!(joint.max_common_slack(&all, &none), Some((_, s)) if s.is_positive())
    }

    /// Vertices and extreme rays by active-constraint enumeration (`n ≤ 3`).
    pub fn vrep(&self) -> Result<VRep> {
        if self.n > VREP_MAX_DIM {
            return Err(Error::GuardExceeded(format!(
                "vertex enumeration supports n <= {VREP_MAX_DIM}"
            )));
        }
        let n = self.n;
        let rows: Vec<&Constraint> = self.equalities.iter().chain(&self.inequalities).collect();
        let mut vertices: Vec<Vec<Rational>> = Vec::new();
        for_each_subset(rows.len(), n, |picked| {
            let a: Vec<Vec<Rational>> = picked.iter().map(|&k| rows[k].a.clone()).collect();
            let b: Vec<Rational> = picked.iter().map(|&k| rows[k].b.clone()).collect();
            if let Some(x) = linalg::solve_unique(&a, &b, n) {
                if self.contains(&x) && !vertices.contains(&x) {
                    vertices.push(x);
                }
            }
        });
        vertices.sort();

        // Recession cone: equalities stay, inequalities become a·d ≤ 0.
        let cone = HPolyhedron::with(
            n,
            self.equalities.iter().map(|c| Constraint::new(c.a.clone(), Rational::zero())).collect(),
            self.inequalities.iter().map(|c| Constraint::new(c.a.clone(), Rational::zero())).collect(),
        );
        let mut rays: Vec<Vec<Rational>> = Vec::new();
        let mut consider = |d: Vec<Rational>| {
            for cand in [d.clone(), d.iter().map(|x| -x).collect::<Vec<_>>()] {
                if cone.contains(&cand) {
                    let prim = linalg::primitive_integer(&cand);
                    if !rays.contains(&prim) {
                        rays.push(prim);
                    }
                }
            }
        };
        if n == 1 {
            consider(vec![Rational::one()]);
        } else {
            let mut candidates = Vec::new();
            for_each_subset(rows.len(), n - 1, |picked| {
                let a: Vec<Vec<Rational>> = picked.iter().map(|&k| rows[k].a.clone()).collect();
                let ns = linalg::nullspace(&a, n);
                if ns.len() == 1 {
                    candidates.push(ns.into_iter().next().expect("one vector"));
                }
            });
            for d in candidates {
                consider(d);
            }
        }
        // Keep extreme rays only: a ray is extreme when the tight cone rows have rank n − 1.
        rays.retain(|d| {
            let tight: Vec<Vec<Rational>> = cone
                .equalities
                .iter()
                .chain(&cone.inequalities)
                .filter(|c| linalg::dot(&c.a, d).is_zero())
                .map(|c| c.a.clone())
                .collect();
            linalg::rank(&tight) == n - 1
        });
        rays.sort();
        let lineality = linalg::nullspace(
            &rows.iter().map(|c| c.a.clone()).collect::<Vec<_>>(),
            n,
        );
        Ok(VRep {
            vertices,
            rays,
            lineality,
        })
    }
}

pub const VREP_MAX_DIM: usize = 3;

/// Exact V-representation; lineality is empty for every cell of an entropy complex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VRep {
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
}

fn for_each_subset(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, f);
            cur.pop();
        }
    }
    if k <= m {
        rec(0, m, k, &mut Vec::with_capacity(k), &mut f);
    }
}

/// Whether `{x : ...}` is feasible; returns a relative-interior witness.
pub fn lp_feasible(p: &HPolyhedron) -> Option<Vec<Rational>> {
    p.relative_interior().map(|w| w.point)
}
