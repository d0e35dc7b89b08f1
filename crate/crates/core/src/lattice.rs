//! Lattices `L = 𝒪_K^r A` presented by a full-rank matrix of Puiseux polynomials.

use std::collections::HashMap;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::ext::{ExtRational, Rational};
use crate::series::PuiseuxPoly;
use crate::subset::{self, Subset, MAX_GROUND_SET};

/// A full-rank `r × n` matrix whose rows span a lattice over the valuation ring.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeMatrix {
    r: usize,
    n: usize,
    entries: Vec<Vec<PuiseuxPoly>>,
}

impl LatticeMatrix {
    /// Validates shape, column support and rank.
    pub fn new(rows: Vec<Vec<PuiseuxPoly>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::InvalidMatrix("matrix has no rows".into()));
        }
        let n = rows[0].len();
        if let Some(bad) = rows.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        if n < r {
            return Err(Error::InvalidMatrix(format!(
                "need r <= n, got r = {r}, n = {n}"
            )));
        }
        if n > MAX_GROUND_SET {
            return Err(Error::GuardExceeded(format!(
                "n = {n} exceeds the supported maximum {MAX_GROUND_SET}"
            )));
        }
        if let Some(column) = (0..n).find(|&j| rows.iter().all(|row| row[j].is_zero())) {
            return Err(Error::HyperplaneViolation { column: column + 1 });
        }
        let full_rank = maximal_minors(&rows, n).values().any(|d| !d.is_zero());
        if !full_rank {
            return Err(Error::InvalidMatrix("rows are linearly dependent".into()));
        }
        Ok(Self { r, n, entries: rows })
    }

    /// Parses rows of Puiseux expressions.
    pub fn parse<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| s.as_ref().parse()).collect())
            .collect::<Result<Vec<Vec<PuiseuxPoly>>>>()?;
        Self::new(parsed)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { PuiseuxPoly::one() } else { PuiseuxPoly::zero() })
                    .collect()
            })
            .collect();
        Self::new(rows).expect("identity is a valid lattice matrix")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &PuiseuxPoly {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<PuiseuxPoly>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[PuiseuxPoly] {
        &self.entries[i]
    }

    /// Lowest valuation among all entries.
    pub fn min_valuation(&self) -> Rational {
        self.entries
            .iter()
            .flatten()
            .filter_map(|f| f.val().into_finite())
            .min()
            .expect("a valid matrix has a nonzero entry")
    }

    /// Least common denominator of all exponents.
    pub fn exponent_denominator(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.entries
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::one(), |acc, f| {
                acc.lcm(&f.exponent_denominator())
            })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.entries.swap(a, b);
    }

    /// `row[target] += factor · row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &PuiseuxPoly) {
        assert_ne!(target, source, "row operation needs distinct rows");
        let src = self.entries[source].clone();
        for (dst, s) in self.entries[target].iter_mut().zip(&src) {
            *dst = &*dst + &(factor * s);
        }
    }

    pub fn scale_row(&mut self, i: usize, factor: &PuiseuxPoly) {
        for e in &mut self.entries[i] {
            *e = &*e * factor;
        }
    }

    /// `y · A` for a row vector `y`.
    pub fn combine_rows(&self, y: &[PuiseuxPoly]) -> Vec<PuiseuxPoly> {
        assert_eq!(y.len(), self.r);
        (0..self.n)
            .map(|j| {
                y.iter()
                    .zip(&self.entries)
                    .fold(PuiseuxPoly::zero(), |acc, (c, row)| &acc + &(c * &row[j]))
            })
            .collect()
    }
}

impl fmt::Debug for LatticeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect();
        f.debug_struct("LatticeMatrix")
            .field("r", &self.r)
            .field("n", &self.n)
            .field("rows", &rows)
            .finish()
    }
}

/// Determinants `det(A_{[r] × J})` for every `r`-subset `J`, keyed by mask.
pub(crate) fn maximal_minors(rows: &[Vec<PuiseuxPoly>], n: usize) -> HashMap<Subset, PuiseuxPoly> {
    let r = rows.len();
    // Expanding along the last row: D_k(J) = Σ_{j∈J} (-1)^{k-1+pos(j,J)} a_{k-1,j} D_{k-1}(J∖j).
    let mut level: HashMap<Subset, PuiseuxPoly> = HashMap::from([(0, PuiseuxPoly::one())]);
    for k in 1..=r {
        let row = &rows[k - 1];
        let mut next = HashMap::new();
        for cols in subset::of_size(n, k) {
            let mut acc = PuiseuxPoly::zero();
            for (pos, j) in subset::elements(cols).enumerate() {
                if row[j].is_zero() {
                    continue;
                }
                let Some(sub) = level.get(&(cols & !(1 << j))) else { continue };
                if sub.is_zero() {
                    continue;
                }
                let term = &row[j] * sub;
                acc = if (k - 1 + pos) % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            next.insert(cols, acc);
        }
        level = next;
    }
    level
}

/// Determinant of a square matrix.
pub fn determinant(rows: &[Vec<PuiseuxPoly>]) -> PuiseuxPoly {
    let n = rows.len();
    if n == 0 {
        return PuiseuxPoly::one();
    }
    maximal_minors(rows, n)
        .remove(&subset::full(n))
        .unwrap_or_else(PuiseuxPoly::zero)
}

/// `A · B^{-1}` written as `numerator / denominator` with `denominator = det B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    pub numerator: Vec<Vec<PuiseuxPoly>>,
    pub denominator: PuiseuxPoly,
}

impl BasisChange {
    /// Entropy vector of the new lattice: scaling every entry by `1/d` shifts
    /// a `k × k` minor valuation by `-k · val(d)`.
    pub fn entropy_vector(&self) -> crate::entropy::EntropyVector {
        let n = self.numerator.first().map_or(0, Vec::len);
        let table = crate::entropy::minor_table(&self.numerator, n);
        let shift = self.denominator.val().into_finite().expect("nonzero denominator");
        let h = crate::entropy::entropy_from_bimatroid(&table);
        let values = (0..=subset::full(n))
            .map(|s| {
                let k = Rational::from_integer((subset::size(s) as i64).into());
                h.get(s).sub_finite(&(k * &shift))
            })
            .collect();
        crate::entropy::EntropyVector::new(n, values).expect("h of the empty set stays 0")
    }

    /// Exact entries when the denominator is a monomial `c·t^e`.
    pub fn to_lattice(&self) -> Option<Result<LatticeMatrix>> {
        if !self.denominator.is_monomial() {
            return None;
        }
        let (e, c) = self.denominator.leading().expect("monomial");
        let inv_c = Rational::one() / c;
        let shift = -e.clone();
        let rows = self
            .numerator
            .iter()
            .map(|row| row.iter().map(|f| f.scale(&inv_c).shift(&shift)).collect())
            .collect();
        Some(LatticeMatrix::new(rows))
    }
}

/// Coordinates of `L` in the basis given by the rows of `B`: `A · B^{-1}` via the adjugate.
pub fn change_basis(a: &LatticeMatrix, b: &[Vec<PuiseuxPoly>]) -> Result<BasisChange> {
    let n = a.n();
    if b.len() != n || b.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    let det = determinant(b);
    if det.is_zero() {
        return Err(Error::Singular);
    }
    // adj(B)_{ij} = (-1)^{i+j} det(B with row j and column i removed)
    let adj: Vec<Vec<PuiseuxPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<PuiseuxPoly>> = b
                        .iter()
                        .enumerate()
                        .filter(|&(row, _)| row != j)
                        .map(|(_, row)| {
                            row.iter()
                                .enumerate()
                                .filter(|&(col, _)| col != i)
                                .map(|(_, x)| x.clone())
                                .collect()
                        })
                        .collect();
                    let d = determinant(&minor);
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        -d
                    }
                })
                .collect()
        })
        .collect();
    let numerator = a
        .rows()
        .iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(&adj)
                        .fold(PuiseuxPoly::zero(), |acc, (x, adj_row)| &acc + &(x * &adj_row[j]))
                })
                .collect()
        })
        .collect();
    Ok(BasisChange {
        numerator,
        denominator: det,
    })
}

/// Valuation of `det` as an extended rational, exposed for diagnostics.
pub fn determinant_valuation(rows: &[Vec<PuiseuxPoly>]) -> ExtRational {
    determinant(rows).val()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[&str]]) -> LatticeMatrix {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        LatticeMatrix::parse(&rows).unwrap()
    }

    fn polys(rows: &[&[&str]]) -> Vec<Vec<PuiseuxPoly>> {
        rows.iter()
            .map(|r| r.iter().map(|s| s.parse().unwrap()).collect())
            .collect()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            LatticeMatrix::parse(&[vec!["1", "0"], vec!["t", "0"]]),
            Err(Error::HyperplaneViolation { column: 2 })
        ));
        assert!(LatticeMatrix::parse(&[vec!["1", "t"], vec!["2", "2*t"]]).is_err());
        assert!(LatticeMatrix::parse(&[vec!["1"], vec!["t"]]).is_err());
        assert!(LatticeMatrix::parse(&[vec!["1", "t"], vec!["1"]]).is_err());
    }

    #[test]
    fn determinant_of_small_matrices() {
        let d = determinant(&polys(&[&["1-t^5", "t+t^3"], &["3+t^2", "3*t+t^3"]]));
        // (1-t^5)(3t+t^3) - (t+t^3)(3+t^2)
        let expected: PuiseuxPoly = "-3*t^3-t^5-3*t^6-t^8".parse().unwrap();
        assert_eq!(d, expected);
        assert_eq!(d.val(), ExtRational::int(3));
    }

    #[test]
    fn identity_basis_leaves_matrix_unchanged() {
        let a = m(&[&["1", "1", "1"], &["0", "t", "t^2"]]);
        let change = change_basis(&a, LatticeMatrix::identity(3).rows()).unwrap();
        assert_eq!(change.to_lattice().unwrap().unwrap(), a);
    }

    #[test]
    fn diagonal_basis_shifts_first_column() {
        let a = m(&[&["1", "1", "1"], &["0", "t", "t^2"]]);
        let b = polys(&[&["t", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        let out = change_basis(&a, &b).unwrap().to_lattice().unwrap().unwrap();
        assert_eq!(out, m(&[&["t^-1", "1", "1"], &["0", "t", "t^2"]]));
    }

    #[test]
    fn permutation_basis_swaps_columns() {
        let a = m(&[&["1", "1", "1"], &["0", "t", "t^2"]]);
        let b = polys(&[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "1"]]);
        let out = change_basis(&a, &b).unwrap().to_lattice().unwrap().unwrap();
        assert_eq!(out, m(&[&["1", "1", "1"], &["t", "0", "t^2"]]));
    }

    #[test]
    fn singular_basis_is_rejected() {
        let a = m(&[&["1", "t"]]);
        let b = polys(&[&["1", "t"], &["2", "2*t"]]);
        assert_eq!(change_basis(&a, &b), Err(Error::Singular));
    }

    #[test]
    fn non_monomial_denominator_keeps_fraction() {
        let a = m(&[&["1", "t"]]);
        let b = polys(&[&["1", "1"], &["0", "1+t"]]);
        let change = change_basis(&a, &b).unwrap();
        assert!(change.to_lattice().is_none());
        assert_eq!(change.denominator.val(), ExtRational::int(0));
        // rows of B: (1,1), (0,1+t); A = 1·(1,1) + ((t-1)/(1+t))·(0,1+t)
        let h = change.entropy_vector();
        assert_eq!(h.get(0b01), &ExtRational::int(0));
        assert_eq!(h.get(0b10), &ExtRational::int(0));
    }
}
