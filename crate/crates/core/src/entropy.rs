//! Minor valuations, entropy vectors, supermodularity and valuated bimatroids.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::ext::ExtRational;
use crate::lattice::LatticeMatrix;
use crate::series::PuiseuxPoly;
use crate::subset::{self, Subset};

/// `h : 2^[n] → ℚ ∪ {∞}`, stored densely by subset mask.
#[derive(Clone, PartialEq, Eq)]
pub struct EntropyVector {
    n: usize,
    values: Vec<ExtRational>,
}

impl EntropyVector {
    /// Requires `2^n` values with `h_∅ = 0`.
    pub fn new(n: usize, values: Vec<ExtRational>) -> Result<Self> {
        if n > subset::MAX_GROUND_SET {
            return Err(Error::GuardExceeded(format!("n = {n} is too large")));
        }
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                got: values.len(),
            });
        }
        if values[0] != ExtRational::zero() {
            return Err(Error::InvalidArgument("h of the empty set must be 0".into()));
        }
        Ok(Self { n, values })
    }

    /// Builds from `(key, value)` pairs such as `("12", "3")`; unlisted subsets are `∞`.
    pub fn from_keys<K: AsRef<str>, V: AsRef<str>>(n: usize, pairs: &[(K, V)]) -> Result<Self> {
        let mut values = vec![ExtRational::Infinity; 1 << n];
        values[0] = ExtRational::zero();
        for (k, v) in pairs {
            let s = subset::parse_key(k.as_ref(), n)
                .ok_or_else(|| Error::InvalidArgument(format!("bad subset key {:?}", k.as_ref())))?;
            values[s as usize] = v
                .as_ref()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad value {:?}", v.as_ref())))?;
        }
        Self::new(n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: Subset) -> &ExtRational {
        &self.values[s as usize]
    }

    pub fn values(&self) -> &[ExtRational] {
        &self.values
    }

    /// Subsets with finite entropy, ascending by mask.
    pub fn finite_subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        (0..self.values.len() as Subset).filter(move |&s| self.values[s as usize].is_finite())
    }

    /// Largest `|J|` with `h_J < ∞`; equals the rank for realizable vectors.
    pub fn rank(&self) -> usize {
        self.finite_subsets().map(subset::size).max().unwrap_or(0)
    }

    pub fn key_values(&self) -> Vec<(String, ExtRational)> {
        (0..self.values.len() as Subset)
            .map(|s| (subset::key(s, self.n), self.values[s as usize].clone()))
            .collect()
    }
}

impl fmt::Debug for EntropyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (k, v) in self.key_values() {
            let k = if k.is_empty() { "∅".to_string() } else { k };
            map.entry(&k, &v);
        }
        map.finish()
    }
}

/// `ν(I, J)` for all row subsets `I ⊆ [r]` and column subsets `J ⊆ [n]` with `|I| = |J|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimatroidTable {
    pub r: usize,
    pub n: usize,
    pub values: BTreeMap<(Subset, Subset), ExtRational>,
}

impl BimatroidTable {
    /// Table with every same-size pair set to `value(I, J)`.
    pub fn from_fn(r: usize, n: usize, mut value: impl FnMut(Subset, Subset) -> ExtRational) -> Self {
        let mut values = BTreeMap::new();
        for k in 0..=r.min(n) {
            for i in subset::of_size(r, k) {
                for j in subset::of_size(n, k) {
                    values.insert((i, j), value(i, j));
                }
            }
        }
        Self { r, n, values }
    }

    /// Missing pairs read as `∞`.
    pub fn get(&self, i: Subset, j: Subset) -> ExtRational {
        self.values
            .get(&(i, j))
            .cloned()
            .unwrap_or(ExtRational::Infinity)
    }
}

/// Minor valuations of arbitrary rows, without validating the matrix.
pub(crate) fn minor_table(rows: &[Vec<PuiseuxPoly>], n: usize) -> BimatroidTable {
    let r = rows.len();
    let mut values = BTreeMap::new();
    values.insert((0, 0), ExtRational::zero());
    // Level k holds det(A_{I×J}) for |I| = |J| = k, expanded along the first row of I.
    let mut level: HashMap<(Subset, Subset), PuiseuxPoly> =
        HashMap::from([((0, 0), PuiseuxPoly::one())]);
    for k in 1..=r.min(n) {
        let mut next = HashMap::new();
        for rows_mask in subset::of_size(r, k) {
            let first = rows_mask.trailing_zeros() as usize;
            let rest = rows_mask & !(1 << first);
            let row = &rows[first];
            for cols in subset::of_size(n, k) {
                let mut acc = PuiseuxPoly::zero();
                for (pos, j) in subset::elements(cols).enumerate() {
                    if row[j].is_zero() {
                        continue;
                    }
                    let sub = &level[&(rest, cols & !(1 << j))];
                    if sub.is_zero() {
                        continue;
                    }
                    let term = &row[j] * sub;
                    acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                values.insert((rows_mask, cols), acc.val());
                next.insert((rows_mask, cols), acc);
            }
        }
        level = next;
    }
    BimatroidTable { r, n, values }
}

/// Valuations of all square minors of `A`.
pub fn minor_valuations(a: &LatticeMatrix) -> BimatroidTable {
    minor_table(a.rows(), a.n())
}

/// `h_J = min_I ν(I, J)`, with `∞` when no row subset of size `|J|` exists.
pub fn entropy_from_bimatroid(nu: &BimatroidTable) -> EntropyVector {
    let mut values = vec![ExtRational::Infinity; 1 << nu.n];
    for (&(_, j), v) in &nu.values {
        let slot = &mut values[j as usize];
        if v < slot {
            *slot = v.clone();
        }
    }
    EntropyVector {
        n: nu.n,
        values,
    }
}

pub fn entropy_vector(a: &LatticeMatrix) -> Result<EntropyVector> {
    let h = entropy_from_bimatroid(&minor_valuations(a));
    if let Some(j) = (0..a.n()).find(|&j| h.get(1 << j).is_infinite()) {
        return Err(Error::HyperplaneViolation { column: j + 1 });
    }
    Ok(h)
}

/// Unordered pairs `I < J` (by mask) with `h_I + h_J > h_{I∩J} + h_{I∪J}`, both sides finite.
pub fn supermodularity_violations(h: &EntropyVector) -> Vec<(Subset, Subset)> {
    let top = subset::full(h.n());
    let mut out = Vec::new();
    for i in 0..=top {
        for j in i + 1..=top {
            if i & j == i || i & j == j {
                continue;
            }
            let left = h.get(i) + h.get(j);
            let right = h.get(i & j) + h.get(i | j);
            if left.is_finite() && right.is_finite() && left > right {
                out.push((i, j));
            }
        }
    }
    out
}

/// Which half of the exchange axiom failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `ν(∅, ∅) ≠ 0`.
    Normalization(ExtRational),
    /// Row exchange for `i' ∈ I' ∖ I` has no certificate.
    RowExchange {
        first: (Subset, Subset),
        second: (Subset, Subset),
        row: usize,
    },
    /// Column exchange for `j ∈ J ∖ J'` has no certificate.
    ColumnExchange {
        first: (Subset, Subset),
        second: (Subset, Subset),
        column: usize,
    },
}

/// Largest `r + n` accepted by the exhaustive axiom check.
pub const BIMATROID_GUARD: usize = 14;

/// Exhaustive check of the valuated-bimatroid axioms.
pub fn bimatroid_axiom_check(nu: &BimatroidTable) -> Result<Vec<AxiomViolation>> {
    if nu.r + nu.n > BIMATROID_GUARD {
        return Err(Error::GuardExceeded(format!(
            "r + n = {} exceeds {BIMATROID_GUARD}",
            nu.r + nu.n
        )));
    }
    let mut out = Vec::new();
    let empty = nu.get(0, 0);
    if empty != ExtRational::zero() {
        out.push(AxiomViolation::Normalization(empty));
    }
    let pairs: Vec<(Subset, Subset)> = nu.values.keys().copied().collect();
    for &(i, j) in &pairs {
        for &(ip, jp) in &pairs {
            let lhs = nu.get(i, j) + nu.get(ip, jp);
            let holds = |a: ExtRational, b: ExtRational| lhs >= a + b;
            for row in subset::elements(ip & !i) {
                let bit = 1 << row;
                let by_row = subset::elements(i & !ip).any(|x| {
                    let xb = 1 << x;
                    holds(nu.get(i & !xb | bit, j), nu.get(ip & !bit | xb, jp))
                });
                let by_col = by_row
                    || subset::elements(jp & !j).any(|y| {
                        let yb = 1 << y;
                        holds(nu.get(i | bit, j | yb), nu.get(ip & !bit, jp & !yb))
                    });
                if !by_col {
                    out.push(AxiomViolation::RowExchange {
                        first: (i, j),
                        second: (ip, jp),
                        row: row + 1,
                    });
                }
            }
            for col in subset::elements(j & !jp) {
                let bit = 1 << col;
                let by_row = subset::elements(i & !ip).any(|x| {
                    let xb = 1 << x;
                    holds(nu.get(i & !xb, j & !bit), nu.get(ip | xb, jp | bit))
                });
                let by_col = by_row
                    || subset::elements(jp & !j).any(|y| {
                        let yb = 1 << y;
                        holds(nu.get(i, j & !bit | yb), nu.get(ip, jp & !yb | bit))
                    });
                if !by_col {
                    out.push(AxiomViolation::ColumnExchange {
                        first: (i, j),
                        second: (ip, jp),
                        column: col + 1,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::rat;
    use crate::series::PuiseuxPoly;
    use proptest::prelude::*;

    fn m(rows: &[&[&str]]) -> LatticeMatrix {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        LatticeMatrix::parse(&rows).unwrap()
    }

    fn staircase() -> LatticeMatrix {
        m(&[&["1", "1", "1"], &["0", "t", "t^2"]])
    }

    fn planar() -> LatticeMatrix {
        m(&[&["1-t^5", "t+t^3"], &["3+t^2", "3*t+t^3"]])
    }

    fn h(n: usize, pairs: &[(&str, &str)]) -> EntropyVector {
        EntropyVector::from_keys(n, pairs).unwrap()
    }

    #[test]
    fn staircase_entropy() {
        let got = entropy_vector(&staircase()).unwrap();
        let want = h(
            3,
            &[("1", "0"), ("2", "0"), ("3", "0"), ("12", "1"), ("13", "2"), ("23", "1")],
        );
        assert_eq!(got, want);
        assert_eq!(minor_valuations(&staircase()).get(0b11, 0b011), ExtRational::int(1));
        assert_eq!(minor_valuations(&staircase()).get(0, 0), ExtRational::zero());
    }

    #[test]
    fn planar_entropy() {
        let got = entropy_vector(&planar()).unwrap();
        assert_eq!(got, h(2, &[("1", "0"), ("2", "1"), ("12", "3")]));
        assert_eq!(minor_valuations(&planar()).get(0b11, 0b11), ExtRational::int(3));
    }

    #[test]
    fn supermodularity_examples() {
        let e = entropy_vector(&staircase()).unwrap();
        assert!(supermodularity_violations(&e).is_empty());
        let bad = h(2, &[("1", "0"), ("2", "0"), ("12", "-1")]);
        assert_eq!(supermodularity_violations(&bad), vec![(0b01, 0b10)]);
        let zero = h(3, &[("1", "0"), ("2", "0"), ("3", "0"), ("12", "0"), ("13", "0"), ("23", "0"), ("123", "0")]);
        assert!(supermodularity_violations(&zero).is_empty());
    }

    #[test]
    fn bimatroid_axioms() {
        assert!(bimatroid_axiom_check(&minor_valuations(&staircase())).unwrap().is_empty());
        assert!(bimatroid_axiom_check(&minor_valuations(&LatticeMatrix::identity(2)))
            .unwrap()
            .is_empty());
        let mut bad = minor_valuations(&LatticeMatrix::identity(2));
        bad.values.insert((0, 0), ExtRational::int(1));
        let v = bimatroid_axiom_check(&bad).unwrap();
        assert!(v.contains(&AxiomViolation::Normalization(ExtRational::int(1))));
        let big = BimatroidTable::from_fn(7, 8, |_, _| ExtRational::zero());
        assert!(bimatroid_axiom_check(&big).is_err());
    }

    #[test]
    fn bimatroid_entropy() {
        let nu = minor_valuations(&planar());
        assert_eq!(
            entropy_from_bimatroid(&nu),
            h(2, &[("1", "0"), ("2", "1"), ("12", "3")])
        );
        let flat = BimatroidTable::from_fn(2, 3, |_, _| ExtRational::zero());
        let hf = entropy_from_bimatroid(&flat);
        for s in 0..8u32 {
            let want = if subset::size(s) <= 2 { ExtRational::zero() } else { ExtRational::Infinity };
            assert_eq!(hf.get(s), &want);
        }
    }

    /// Determinant by summing over permutations, independent of the Laplace table.
    fn naive_det(rows: &[Vec<PuiseuxPoly>]) -> PuiseuxPoly {
        fn perms(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(k - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, k - 1);
                    out.push(q);
                }
            }
            out
        }
        let k = rows.len();
        let mut acc = PuiseuxPoly::zero();
        for p in perms(k) {
            let inversions = (0..k)
                .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
                .filter(|&(a, b)| p[a] > p[b])
                .count();
            let term = (0..k).fold(PuiseuxPoly::one(), |t, i| &t * &rows[i][p[i]]);
            acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    fn poly() -> impl Strategy<Value = PuiseuxPoly> {
        prop::collection::vec((0i64..4, -3i64..4), 0..3).prop_map(|t| {
            PuiseuxPoly::from_terms(t.into_iter().map(|(e, c)| (rat(e), rat(c))))
        })
    }

    fn square(k: usize) -> impl Strategy<Value = Vec<Vec<PuiseuxPoly>>> {
        prop::collection::vec(prop::collection::vec(poly(), k), k)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn laplace_agrees_with_permutation_sum(m3 in square(3), m4 in square(4)) {
            for rows in [m3, m4] {
                let k = rows.len();
                let table = minor_table(&rows, k);
                prop_assert_eq!(table.get(subset::full(k), subset::full(k)), naive_det(&rows).val());
                // every 2×2 minor too
                for i in subset::of_size(k, 2) {
                    for j in subset::of_size(k, 2) {
                        let sub: Vec<Vec<PuiseuxPoly>> = subset::elements(i)
                            .map(|a| subset::elements(j).map(|b| rows[a][b].clone()).collect())
                            .collect();
                        prop_assert_eq!(table.get(i, j), naive_det(&sub).val());
                    }
                }
            }
        }
    }
}
