//! Two-phase dense tableau simplex over ℚ with Bland's rule.
//!
//! Variables are free; each is split as `x = x⁺ − x⁻` internally.

use num_traits::{Signed, Zero};

use crate::ext::Rational;

/// A linear constraint `a·x (≤ or =) b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub a: Vec<Rational>,
    pub b: Rational,
}

impl Constraint {
    pub fn new(a: Vec<Rational>, b: Rational) -> Self {
        Self { a, b }
    }

    /// `b − a·x`, nonnegative when an inequality holds.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.b - super::linalg::dot(&self.a, x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Objective row in the form `z − Σ c_j x_j`; last entry is the current value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Rewrites the objective row in terms of the nonbasic variables.
    fn price_out(&mut self) {
        for i in 0..self.rows.len() {
            let b = self.basis[i];
            if !self.obj[b].is_zero() {
                let f = self.obj[b].clone();
                for (x, p) in self.obj.iter_mut().zip(&self.rows[i]) {
                    *x -= &f * p;
                }
            }
        }
    }

    /// Maximizes over columns `< allowed`; `false` when unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let rhs = self.width;
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximizes `c·x` subject to `eq` (equalities) and `le` (`a·x ≤ b`), `x` free.
pub fn maximize(c: &[Rational], eq: &[Constraint], le: &[Constraint]) -> LpOutcome {
    let n = c.len();
    let m = eq.len() + le.len();
    let split = 2 * n;
    let slack_base = split;
    let art_base = split + le.len();
    let width = art_base + m;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut artificial_rows = Vec::new();
    for (k, con) in eq.iter().chain(le).enumerate() {
        let mut row = vec![Rational::zero(); width + 1];
        let flip = con.b.is_negative();
        for (j, a) in con.a.iter().enumerate() {
            let a = if flip { -a } else { a.clone() };
            row[j] = a.clone();
            row[n + j] = -a;
        }
        if k >= eq.len() {
            let s = slack_base + k - eq.len();
            row[s] = if flip { -Rational::from_integer(1.into()) } else { Rational::from_integer(1.into()) };
        }
        row[width] = if flip { -con.b.clone() } else { con.b.clone() };
        if k >= eq.len() && !flip {
            basis.push(slack_base + k - eq.len());
        } else {
            row[art_base + k] = Rational::from_integer(1.into());
            basis.push(art_base + k);
            artificial_rows.push(k);
        }
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        obj: vec![Rational::zero(); width + 1],
        basis,
        width,
    };

    if !artificial_rows.is_empty() {
        // Phase 1: maximize −Σ artificials.
        for &k in &artificial_rows {
            t.obj[art_base + k] = Rational::from_integer(1.into());
        }
        t.price_out();
        t.optimize(width);
        if t.obj[width].is_negative() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining artificials out of the basis or drop redundant rows.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art_base {
                match (0..art_base).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => {
                        t.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    // Phase 2 over the original columns only.
    t.obj = vec![Rational::zero(); width + 1];
    for (j, cj) in c.iter().enumerate() {
        t.obj[j] = -cj.clone();
        t.obj[n + j] = cj.clone();
    }
    for row in t.rows.iter_mut() {
        for x in row[art_base..width].iter_mut() {
            *x = Rational::zero();
        }
    }
    t.price_out();
    if !t.optimize(art_base) {
        return LpOutcome::Unbounded;
    }
    let mut values = vec![Rational::zero(); width];
    for (i, &b) in t.basis.iter().enumerate() {
        values[b] = t.rows[i][width].clone();
    }
    let x: Vec<Rational> = (0..n).map(|j| &values[j] - &values[n + j]).collect();
    let value = t.obj[width].clone();
    LpOutcome::Optimal { x, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{rat, ratio};

    fn con(a: &[i64], b: i64) -> Constraint {
        Constraint::new(a.iter().map(|&x| rat(x)).collect(), rat(b))
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18, x,y ≥ 0
        let le = [con(&[1, 0], 4), con(&[0, 2], 12), con(&[3, 2], 18), con(&[-1, 0], 0), con(&[0, -1], 0)];
        match maximize(&[rat(3), rat(5)], &[], &le) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, rat(36));
                assert_eq!(x, vec![rat(2), rat(6)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let le = [con(&[1], 0), con(&[-1], -1)];
        assert_eq!(maximize(&[rat(0)], &[], &le), LpOutcome::Infeasible);
        assert_eq!(maximize(&[rat(1)], &[], &[con(&[-1], 0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn equalities_and_negative_rhs() {
        // x + y = -1, y ≥ -5, max x
        let eq = [con(&[1, 1], -1)];
        let le = [con(&[0, -1], 5)];
        match maximize(&[rat(1), rat(0)], &eq, &le) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, rat(4));
                assert_eq!(x, vec![rat(4), rat(-5)]);
            }
            other => panic!("{other:?}"),
        }
        let eq = [con(&[2, 0], 1), con(&[4, 0], 2)];
        match maximize(&[rat(0), rat(0)], &eq, &[]) {
            LpOutcome::Optimal { x, .. } => assert_eq!(x[0], ratio(1, 2)),
            other => panic!("{other:?}"),
        }
    }
}
