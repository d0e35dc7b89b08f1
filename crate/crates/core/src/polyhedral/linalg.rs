//! Exact Gaussian elimination over ℚ.

use num_traits::{One, Signed, Zero};

use crate::ext::Rational;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..rows[i].len() {
                    let delta = &f * &rows[r][k];
                    rows[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m = rows.to_vec();
    rref(&mut m, width).len()
}

/// Unique solution of `A x = b` for `A` with `n` columns, if the system has exactly one.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Option<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, n + 1);
    if pivots.contains(&n) || pivots.len() != n {
        return None;
    }
    Some(m.iter().take(n).map(|row| row[n].clone()).collect())
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(a: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); n];
            x[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Scales a nonzero vector to the primitive integer vector with the same direction.
pub fn primitive_integer(v: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Sign of the first nonzero entry, for canonical orientation.
pub fn leading_sign_positive(v: &[Rational]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_none_or(|x| x.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{rat, ratio};

    fn rows(m: &[&[i64]]) -> Vec<Vec<Rational>> {
        m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = rows(&[&[1, 1, 0], &[2, 2, 0], &[0, 1, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            assert!(dot(row, &ns[0]).is_zero());
        }
    }

    #[test]
    fn unique_solutions() {
        let a = rows(&[&[2, 0], &[0, 4]]);
        assert_eq!(solve_unique(&a, &[rat(1), rat(1)], 2), Some(vec![ratio(1, 2), ratio(1, 4)]));
        let singular = rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve_unique(&singular, &[rat(1), rat(2)], 2), None);
        assert_eq!(solve_unique(&singular, &[rat(1), rat(1)], 2), None);
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(
            primitive_integer(&[ratio(1, 2), ratio(-3, 4), rat(0)]),
            vec![rat(2), rat(-3), rat(0)]
        );
    }
}
