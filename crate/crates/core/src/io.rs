//! JSON documents for matrices, entropy vectors, generators and complexes,
//! plus plot and point-cloud export.
//!
//! Exact quantities are strings: rationals as `"p/q"` (or `"p"`), `∞` as
//! `"inf"`, subsets as sorted 1-based index strings such as `""`, `"13"`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::amoeba::AmoebaCloud;
use crate::entropy::EntropyVector;
use crate::error::{Error, Result};
use crate::ext::{parse_rational, ExtRational, Rational};
use crate::lattice::LatticeMatrix;
use crate::polyhedral::polyhedron::VREP_MAX_DIM;
use crate::polyhedral::{Cell, Complex, Constraint, HPolyhedron};
use crate::subset::{self, Subset};
use crate::tropical::TropicalPoint;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub n: usize,
    pub r: usize,
    pub rows: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl MatrixDocument {
    pub fn from_matrix(a: &LatticeMatrix, label: Option<String>) -> Self {
        Self {
            n: a.n(),
            r: a.r(),
            rows: a
                .rows()
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
            label,
        }
    }

    pub fn to_matrix(&self) -> Result<LatticeMatrix> {
        if self.rows.len() != self.r {
            return Err(Error::DimensionMismatch {
                expected: self.r,
                got: self.rows.len(),
            });
        }
        if let Some(row) = self.rows.iter().find(|row| row.len() != self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: row.len(),
            });
        }
        LatticeMatrix::parse(&self.rows)
    }
}

fn parse_q(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::Json(format!("not a rational: {s:?}")))
}

fn parse_ext(s: &str) -> Result<ExtRational> {
    s.parse().map_err(|_| Error::Json(format!("not a rational or \"inf\": {s:?}")))
}

fn parse_subset(s: &str, n: usize) -> Result<Subset> {
    subset::parse_key(s, n).ok_or_else(|| Error::Json(format!("not a subset of [{n}]: {s:?}")))
}

/// `{key: value}` over all subsets, in ascending mask order.
pub fn entropy_to_json(h: &EntropyVector) -> Value {
    let map: Map<String, Value> = h
        .key_values()
        .into_iter()
        .map(|(k, v)| (k, Value::String(v.to_string())))
        .collect();
    Value::Object(map)
}

/// Inverse of [`entropy_to_json`]; missing subsets read as `∞`.
pub fn entropy_from_json(n: usize, v: &Value) -> Result<EntropyVector> {
    let map = v
        .as_object()
        .ok_or_else(|| Error::Json("entropy vector must be an object".into()))?;
    let mut values = vec![ExtRational::Infinity; 1 << n];
    for (k, x) in map {
        let s = parse_subset(k, n)?;
        let text = x
            .as_str()
            .ok_or_else(|| Error::Json(format!("value of {k:?} must be a string")))?;
        values[s as usize] = parse_ext(text)?;
    }
    EntropyVector::new(n, values)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntropyDocument {
    pub n: usize,
    pub h: Value,
}

impl EntropyDocument {
    pub fn new(h: &EntropyVector) -> Self {
        Self {
            n: h.n(),
            h: entropy_to_json(h),
        }
    }

    pub fn to_entropy(&self) -> Result<EntropyVector> {
        entropy_from_json(self.n, &self.h)
    }
}

pub fn point_strings(p: &TropicalPoint) -> Vec<String> {
    p.0.iter().map(ToString::to_string).collect()
}

/// `{key(J): u_J}` in ascending mask order.
pub fn generators_to_json(gens: &BTreeMap<Subset, TropicalPoint>, n: usize) -> Value {
    Value::Object(
        gens.iter()
            .map(|(s, u)| (subset::key(*s, n), Value::from(point_strings(u))))
            .collect(),
    )
}

pub fn generators_from_json(n: usize, v: &Value) -> Result<BTreeMap<Subset, TropicalPoint>> {
    let map = v
        .as_object()
        .ok_or_else(|| Error::Json("generators must be an object".into()))?;
    map.iter()
        .map(|(k, u)| {
            let coords: Vec<String> = serde_json::from_value(u.clone())?;
            let p = coords.iter().map(|c| parse_ext(c)).collect::<Result<Vec<_>>>()?;
            Ok((parse_subset(k, n)?, TropicalPoint(p)))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HrepDocument {
    /// Rows `[a_1, …, a_n, b]` meaning `a·x = b`.
    pub eq: Vec<Vec<String>>,
    /// Rows `[a_1, …, a_n, b]` meaning `a·x ≤ b`.
    pub ineq: Vec<Vec<String>>,
}

impl HrepDocument {
    fn new(p: &HPolyhedron) -> Self {
        let rows = |cs: &[Constraint]| {
            cs.iter()
                .map(|c| c.a.iter().chain([&c.b]).map(ToString::to_string).collect())
                .collect()
        };
        Self {
            eq: rows(&p.equalities),
            ineq: rows(&p.inequalities),
        }
    }

    fn to_polyhedron(&self, n: usize) -> Result<HPolyhedron> {
        let rows = |rs: &[Vec<String>]| -> Result<Vec<Constraint>> {
            rs.iter()
                .map(|r| {
                    if r.len() != n + 1 {
                        return Err(Error::DimensionMismatch {
                            expected: n + 1,
                            got: r.len(),
                        });
                    }
                    let mut q = r.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>()?;
                    let b = q.pop().expect("n + 1 entries");
                    Ok(Constraint::new(q, b))
                })
                .collect()
        };
        Ok(HPolyhedron::with(n, rows(&self.eq)?, rows(&self.ineq)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VrepDocument {
    pub vertices: Vec<Vec<String>>,
    pub rays: Vec<Vec<String>>,
    pub lineality: Vec<Vec<String>>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDocument {
    pub id: usize,
    pub dim: usize,
    pub active: Vec<String>,
    pub label: String,
    pub hrep: HrepDocument,
    pub faces: Vec<usize>,
    pub witness: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vrep: Option<VrepDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub n: usize,
    pub h: Value,
    pub cells: Vec<CellDocument>,
    pub maximal_ids: Vec<usize>,
    pub sigma_ids: Vec<usize>,
}

impl ComplexDocument {
    /// With `with_vrep`, each cell also carries vertices and rays (needs `n ≤ 3`).
    pub fn new(c: &Complex, with_vrep: bool) -> Result<Self> {
        let n = c.n();
        let cells = c
            .cells
            .iter()
            .map(|cell| {
                let vrep = if with_vrep {
                    let v = cell.hrep.vrep()?;
                    Some(VrepDocument {
                        vertices: v.vertices.iter().map(|x| strings(x)).collect(),
                        rays: v.rays.iter().map(|x| strings(x)).collect(),
                        lineality: v.lineality.iter().map(|x| strings(x)).collect(),
                    })
                } else {
                    None
                };
                Ok(CellDocument {
                    id: cell.id,
                    dim: cell.dim,
                    active: cell.key.iter().map(|&s| subset::key(s, n)).collect(),
                    label: subset::key(cell.label, n),
                    hrep: HrepDocument::new(&cell.hrep),
                    faces: cell.faces.clone(),
                    witness: strings(&cell.witness),
                    vrep,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            n,
            h: entropy_to_json(&c.h),
            cells,
            maximal_ids: c.maximal_ids.clone(),
            sigma_ids: c.sigma_ids.clone(),
        })
    }

    pub fn to_complex(&self) -> Result<Complex> {
        let n = self.n;
        let h = entropy_from_json(n, &self.h)?;
        let cells = self
            .cells
            .iter()
            .map(|d| {
                Ok(Cell {
                    id: d.id,
                    key: d.active.iter().map(|k| parse_subset(k, n)).collect::<Result<_>>()?,
                    dim: d.dim,
                    hrep: d.hrep.to_polyhedron(n)?,
                    label: parse_subset(&d.label, n)?,
                    faces: d.faces.clone(),
                    witness: d.witness.iter().map(|x| parse_q(x)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(bad) = cells.iter().enumerate().find(|(i, c)| c.id != *i) {
            return Err(Error::Json(format!("cell ids must be 0..; found {} at {}", bad.1.id, bad.0)));
        }
        Ok(Complex {
            h,
            cells,
            maximal_ids: self.maximal_ids.clone(),
            sigma_ids: self.sigma_ids.clone(),
        })
    }
}

/// Plot data: per cell its dimension, label, active set, vertices and rays.
pub fn plot_document(c: &Complex) -> Result<Value> {
    let n = c.n();
    if n > VREP_MAX_DIM {
        return Err(Error::GuardExceeded(format!(
            "plot export needs n ≤ {VREP_MAX_DIM}, got {n}"
        )));
    }
    let doc = ComplexDocument::new(c, true)?;
    let cells: Vec<Value> = doc
        .cells
        .into_iter()
        .map(|cell| {
            let v = cell.vrep.expect("vrep requested");
            serde_json::json!({
                "id": cell.id,
                "dim": cell.dim,
                "label": cell.label,
                "active": cell.active,
                "sigma": c.sigma_ids.contains(&cell.id),
                "vertices": v.vertices,
                "rays": v.rays,
                "lineality": v.lineality,
            })
        })
        .collect();
    Ok(serde_json::json!({
        "schema": "troplat-plot/1",
        "n": n,
        "cells": cells,
    }))
}

pub fn export_plot(c: &Complex, path: &Path) -> Result<()> {
    let doc = plot_document(c)?;
    std::fs::write(path, to_json_string(&doc, Some(2)))?;
    Ok(())
}

/// Cloud as CSV: header `x1,…,xn`, one point per line.
pub fn cloud_to_csv(cloud: &AmoebaCloud) -> String {
    let n = cloud.points.first().map_or(0, Vec::len);
    let mut out = (1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",");
    out.push('\n');
    for p in &cloud.points {
        let line: Vec<String> = p.iter().map(|x| float_string(*x)).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
    out
}

/// Shortest decimal that round-trips to the same `f64`.
pub fn float_string(x: f64) -> String {
    serde_json::Number::from_f64(x).map_or_else(|| x.to_string(), |n| n.to_string())
}

/// JSON text with a trailing newline; `indent = None` gives the compact form.
pub fn to_json_string<T: Serialize>(value: &T, indent: Option<usize>) -> String {
    let mut out = match indent {
        None => serde_json::to_string(value).expect("serializable"),
        Some(k) => {
            let pad = vec![b' '; k];
            let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
            let mut buf = Vec::new();
            let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
            value.serialize(&mut ser).expect("serializable");
            String::from_utf8(buf).expect("utf-8")
        }
    };
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::entropy_vector;
    use crate::fixtures::Fixture;
    use crate::polyhedral::complex::sigma_complex;
    use crate::tropical::generators;

    #[test]
    fn matrix_round_trip() {
        for f in Fixture::ALL {
            let a = f.matrix();
            let doc = MatrixDocument::from_matrix(&a, Some(f.name().into()));
            let text = to_json_string(&doc, Some(2));
            let back: MatrixDocument = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_matrix().unwrap(), a);
        }
        let bad = MatrixDocument {
            n: 2,
            r: 1,
            rows: vec![vec!["1".into()]],
            label: None,
        };
        assert!(bad.to_matrix().is_err());
    }

    #[test]
    fn entropy_round_trip_and_format() {
        let h = entropy_vector(&Fixture::Staircase.matrix()).unwrap();
        let doc = EntropyDocument::new(&h);
        let text = to_json_string(&doc, None);
        assert!(text.contains(r#""123":"inf""#), "{text}");
        assert!(text.ends_with('\n'));
        let back: EntropyDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_entropy().unwrap(), h);
    }

    #[test]
    fn generators_round_trip() {
        let h = entropy_vector(&Fixture::Skew.matrix()).unwrap();
        let g = generators(&h);
        let v = generators_to_json(&g, 3);
        assert_eq!(v["1"], serde_json::json!(["inf", "4", "2"]));
        assert_eq!(generators_from_json(3, &v).unwrap(), g);
    }

    #[test]
    fn complex_round_trip() {
        for f in [Fixture::Planar, Fixture::Skew, Fixture::Corner] {
            let c = sigma_complex(&entropy_vector(&f.matrix()).unwrap()).unwrap();
            for vrep in [false, true] {
                let doc = ComplexDocument::new(&c, vrep).unwrap();
                let text = to_json_string(&doc, Some(1));
                let back: ComplexDocument = serde_json::from_str(&text).unwrap();
                assert_eq!(back, doc);
                assert_eq!(back.to_complex().unwrap(), c);
            }
        }
    }

    #[test]
    fn plot_of_planar_complex() {
        let c = sigma_complex(&entropy_vector(&Fixture::Planar.matrix()).unwrap()).unwrap();
        let doc = plot_document(&c).unwrap();
        let vertices: Vec<&Value> = doc["cells"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|x| x["dim"] == 0)
            .map(|x| &x["vertices"][0])
            .collect();
        assert_eq!(vertices, [&serde_json::json!(["0", "1"]), &serde_json::json!(["2", "3"])]);
        let line = sigma_complex(&EntropyVector::from_keys(1, &[("1", "0")]).unwrap()).unwrap();
        let doc = plot_document(&line).unwrap();
        assert_eq!(doc["cells"][0]["vertices"], serde_json::json!([["0"]]));
    }

    #[test]
    fn floats_are_shortest_round_trip() {
        assert_eq!(float_string(0.1), "0.1");
        assert_eq!(float_string(1.0 / 3.0).parse::<f64>().unwrap(), 1.0 / 3.0);
    }
}
