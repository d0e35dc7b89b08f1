//! The complex `𝒦_L` of linearity regions of `φ`, its labeling and `Σ_L`.
//!
//! A cell is identified by its key: the set of monomials `v_J − h_J` that tie
//! for the maximum on its relative interior. Faces are found breadth-first by
//! tightening one inequality at a time and reading the key off a
//! relative-interior witness.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::linalg;
use super::lp::Constraint;
use super::polyhedron::{HPolyhedron, VRep};
use crate::entropy::EntropyVector;
use crate::error::{Error, Result};
use crate::ext::Rational;
use crate::subset::{self, Subset};
use crate::tropical::phi_rational;

/// Largest number of finite monomials accepted by the enumeration.
pub const MONOMIAL_GUARD: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: usize,
    /// Active monomials on the relative interior, ascending by mask.
    pub key: Vec<Subset>,
    pub dim: usize,
    pub hrep: HPolyhedron,
    pub label: Subset,
    /// Ids of all proper faces.
    pub faces: Vec<usize>,
    /// A relative-interior point.
    pub witness: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    pub h: EntropyVector,
    pub cells: Vec<Cell>,
    /// Full-dimensional cells.
    pub maximal_ids: Vec<usize>,
    /// Cells labeled `[n]`; empty until [`label_and_extract_sigma`] runs.
    pub sigma_ids: Vec<usize>,
}

impl Complex {
    pub fn n(&self) -> usize {
        self.h.n()
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    /// Number of cells per dimension, index = dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        count_by_dim(self.cells.iter())
    }

    pub fn sigma_cells(&self) -> impl Iterator<Item = &Cell> {
        self.sigma_ids.iter().map(|&i| &self.cells[i])
    }

    /// `Σ_L` cells that are not proper faces of another `Σ_L` cell.
    pub fn sigma_maximal_ids(&self) -> Vec<usize> {
        self.sigma_ids
            .iter()
            .copied()
            .filter(|&i| {
                !self
                    .sigma_ids
                    .iter()
                    .any(|&j| j != i && self.cells[j].faces.contains(&i))
            })
            .collect()
    }

    /// Maximal `Σ_L` cells counted by dimension.
    pub fn sigma_maximal_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for i in self.sigma_maximal_ids() {
            *out.entry(self.cells[i].dim).or_insert(0) += 1;
        }
        out
    }

    pub fn sigma_dim(&self) -> Option<usize> {
        self.sigma_cells().map(|c| c.dim).max()
    }

    /// The subcomplex `Σ_L` as a complex of its own, ids renumbered in order.
    pub fn sigma_only(&self) -> Complex {
        let remap: BTreeMap<usize, usize> = self
            .sigma_ids
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let cells: Vec<Cell> = self
            .sigma_ids
            .iter()
            .map(|&old| {
                let mut c = self.cells[old].clone();
                c.id = remap[&old];
                c.faces = c.faces.iter().filter_map(|f| remap.get(f).copied()).collect();
                c
            })
            .collect();
        let maximal_ids = self
            .sigma_maximal_ids()
            .iter()
            .map(|old| remap[old])
            .collect();
        let sigma_ids = (0..cells.len()).collect();
        Complex {
            h: self.h.clone(),
            cells,
            maximal_ids,
            sigma_ids,
        }
    }

    /// The unique cell whose relative interior contains `v`.
    pub fn locate(&self, v: &[Rational]) -> Option<&Cell> {
        let key = phi_rational(&self.h, v).ok()?.active;
        self.cells.iter().find(|c| c.key == key)
    }

    pub fn vrep(&self, id: usize) -> Result<VRep> {
        self.cells[id].hrep.vrep()
    }
}

pub fn count_by_dim<'a>(cells: impl Iterator<Item = &'a Cell>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for c in cells {
        if out.len() <= c.dim {
            out.resize(c.dim + 1, 0);
        }
        out[c.dim] += 1;
    }
    out
}

fn indicator(s: Subset, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|j| Rational::from_integer((subset::contains(s, j) as i64).into()))
        .collect()
}

fn finite(h: &EntropyVector, s: Subset) -> Result<Rational> {
    h.get(s).finite().cloned().ok_or_else(|| Error::InfiniteEntropy {
        subset: subset::key(s, h.n()),
    })
}

/// Region of linearity of monomial `J`: `v_J − h_J ≥ v_I − h_I` for all finite `I ≠ J`.
pub fn build_region(h: &EntropyVector, j: Subset) -> Result<HPolyhedron> {
    cell_hrep(h, &[j])
}

/// Canonical H-description of the closed cell where all monomials of `key` tie
/// and dominate: equalities against the first key element, one inequality per
/// other finite monomial.
pub fn cell_hrep(h: &EntropyVector, key: &[Subset]) -> Result<HPolyhedron> {
    let n = h.n();
    let base = *key.first().ok_or(Error::EmptyComplex)?;
    let hb = finite(h, base)?;
    let eb = indicator(base, n);
    let row = |s: Subset| -> Result<Constraint> {
        let a: Vec<Rational> = indicator(s, n).iter().zip(&eb).map(|(x, y)| x - y).collect();
        Ok(Constraint::new(a, finite(h, s)? - &hb))
    };
    let equalities = key[1..].iter().map(|&s| row(s)).collect::<Result<_>>()?;
    let inequalities = h
        .finite_subsets()
        .filter(|s| !key.contains(s))
        .map(row)
        .collect::<Result<_>>()?;
    Ok(HPolyhedron::with(n, equalities, inequalities))
}

/// Dimension of the cell with the given key: the ties are its only implicit equalities.
fn key_dim(key: &[Subset], n: usize) -> usize {
    let base = indicator(key[0], n);
    let rows: Vec<Vec<Rational>> = key[1..]
        .iter()
        .map(|&s| indicator(s, n).iter().zip(&base).map(|(x, y)| x - y).collect())
        .collect();
    n - linalg::rank(&rows)
}

/// All cells of `𝒦_L`, ids sorted by `(dim, key)`, labels not yet assigned.
pub fn enumerate_complex(h: &EntropyVector) -> Result<Complex> {
    let n = h.n();
    let monomials: Vec<Subset> = h.finite_subsets().collect();
    if monomials.len() > MONOMIAL_GUARD {
        return Err(Error::GuardExceeded(format!(
            "{} finite monomials exceed {MONOMIAL_GUARD}",
            monomials.len()
        )));
    }

    let mut found: BTreeMap<Vec<Subset>, Vec<Rational>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &j in &monomials {
        let region = build_region(h, j)?;
        if let Some(w) = region.relative_interior() {
            if w.dim == n {
                let key = vec![j];
                found.insert(key.clone(), w.point);
                queue.push_back(key);
            }
        }
    }

    while let Some(key) = queue.pop_front() {
        let hrep = cell_hrep(h, &key)?;
        for (k, ineq) in hrep.inequalities.iter().enumerate() {
            let mut tightened = hrep.clone();
            tightened.inequalities.remove(k);
            tightened.equalities.push(ineq.clone());
            let Some(w) = tightened.relative_interior() else { continue };
            let face_key = phi_rational(h, &w.point)?.active;
            if !found.contains_key(&face_key) {
                found.insert(face_key.clone(), w.point);
                queue.push_back(face_key);
            }
        }
    }

    let mut ordered: Vec<(usize, Vec<Subset>, Vec<Rational>)> = found
        .into_iter()
        .map(|(key, w)| (key_dim(&key, n), key, w))
        .collect();
    ordered.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    let keys: Vec<BTreeSet<Subset>> = ordered
        .iter()
        .map(|(_, k, _)| k.iter().copied().collect())
        .collect();
    let mut cells = Vec::with_capacity(ordered.len());
    for (id, (dim, key, witness)) in ordered.into_iter().enumerate() {
        // τ is a face of σ exactly when key(σ) ⊊ key(τ).
        let own = &keys[id];
        let faces = keys
            .iter()
            .enumerate()
            .filter(|(other, k)| *other != id && own.is_subset(k) && own != *k)
            .map(|(other, _)| other)
            .collect();
        let hrep = cell_hrep(h, &key)?;
        cells.push(Cell {
            id,
            key,
            dim,
            hrep,
            label: 0,
            faces,
            witness,
        });
    }
    let maximal_ids = cells.iter().filter(|c| c.dim == n).map(|c| c.id).collect();
    Ok(Complex {
        h: h.clone(),
        cells,
        maximal_ids,
        sigma_ids: Vec::new(),
    })
}

/// Labels each cell by the union of the monomials of its incident full-dimensional
/// cells and collects `Σ_L = {cells labeled [n]}`.
pub fn label_and_extract_sigma(mut c: Complex) -> Complex {
    let full = subset::full(c.n());
    let maximal_monomials: BTreeSet<Subset> = c
        .maximal_ids
        .iter()
        .map(|&i| c.cells[i].key[0])
        .collect();
    for cell in c.cells.iter_mut() {
        cell.label = cell
            .key
            .iter()
            .filter(|s| maximal_monomials.contains(s))
            .fold(0, |acc, s| acc | s);
    }
    c.sigma_ids = c.cells.iter().filter(|x| x.label == full).map(|x| x.id).collect();
    c
}

/// Enumeration followed by labeling.
pub fn sigma_complex(h: &EntropyVector) -> Result<Complex> {
    enumerate_complex(h).map(label_and_extract_sigma)
}

/// Pairs of full-dimensional cells whose interiors meet; empty for a subdivision.
pub fn overlapping_maximal_cells(c: &Complex) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (a, &i) in c.maximal_ids.iter().enumerate() {
        for &j in &c.maximal_ids[a + 1..] {
            if c.cells[i].hrep.interiors_overlap(&c.cells[j].hrep) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Whether `Σ_L` contains every face of each of its cells.
pub fn sigma_is_face_closed(c: &Complex) -> bool {
    let sigma: BTreeSet<usize> = c.sigma_ids.iter().copied().collect();
    c.sigma_cells().all(|cell| cell.faces.iter().all(|f| sigma.contains(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::rat;

    fn h(n: usize, pairs: &[(&str, &str)]) -> EntropyVector {
        EntropyVector::from_keys(n, pairs).unwrap()
    }

    fn planar() -> EntropyVector {
        h(2, &[("1", "0"), ("2", "1"), ("12", "3")])
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn planar_regions() {
        let r = build_region(&planar(), 0b11).unwrap();
        // v1 + v2 − 3 ≥ 0, ≥ v1, ≥ v2 − 1
        let rows: Vec<(Vec<Rational>, Rational)> =
            r.inequalities.iter().map(|c| (c.a.clone(), c.b.clone())).collect();
        assert_eq!(
            rows,
            vec![
                (ints(&[-1, -1]), rat(-3)),
                (ints(&[0, -1]), rat(-3)),
                (ints(&[-1, 0]), rat(-2)),
            ]
        );
        assert_eq!(r.affine_dim(), 2);
        let empty = build_region(&planar(), 0).unwrap();
        assert_eq!(empty.inequalities.len(), 3);
        let line = h(1, &[("1", "0")]);
        let ray = build_region(&line, 0b1).unwrap();
        assert_eq!(ray.inequalities, vec![Constraint::new(ints(&[-1]), rat(0))]);
        let inf = h(2, &[("1", "0"), ("2", "0")]);
        assert!(build_region(&inf, 0b11).is_err());
    }

    #[test]
    fn planar_complex() {
        let c = sigma_complex(&planar()).unwrap();
        assert_eq!(c.f_vector(), vec![2, 5, 4]);
        let vertices: Vec<Vec<Rational>> = c
            .cells
            .iter()
            .filter(|x| x.dim == 0)
            .map(|x| x.witness.clone())
            .collect();
        assert_eq!(vertices, vec![ints(&[0, 1]), ints(&[2, 3])]);
        assert_eq!(count_by_dim(c.sigma_cells()), vec![2, 3, 1]);
        assert!(sigma_is_face_closed(&c));
        assert!(overlapping_maximal_cells(&c).is_empty());
        assert_eq!(c.sigma_only().cells.len(), 6);
    }

    #[test]
    fn line_complex() {
        let c = sigma_complex(&h(1, &[("1", "0")])).unwrap();
        assert_eq!(c.f_vector(), vec![1, 2]);
        assert_eq!(c.cells[0].witness, ints(&[0]));
    }

    #[test]
    fn vrep_of_planar_cells() {
        let c = sigma_complex(&planar()).unwrap();
        let segment = c
            .cells
            .iter()
            .find(|x| x.key == vec![0b01, 0b10])
            .expect("segment between the two vertices");
        let v = segment.hrep.vrep().unwrap();
        assert_eq!(v.vertices, vec![ints(&[0, 1]), ints(&[2, 3])]);
        assert!(v.rays.is_empty());
        // the edge where ∅ and {2} tie: v2 = 1, v1 ≤ 0
        let edge = c.cells.iter().find(|x| x.key == vec![0b00, 0b10]).unwrap();
        let v = edge.hrep.vrep().unwrap();
        assert_eq!(v.vertices, vec![ints(&[0, 1])]);
        assert_eq!(v.rays, vec![ints(&[-1, 0])]);
    }
}
