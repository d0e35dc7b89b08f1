//! Exact tropicalization of lattices over the Puiseux-series valuation ring.
//!
//! A lattice `L ⊂ K^n` is given by a full-rank matrix of Puiseux polynomials.
//! From its minor valuations we build the entropy vector `h(L)`, the convex
//! piecewise-linear function `φ_L(v) = max_J (v_J − h_J)`, and the polyhedral
//! complex `Σ_L` whose support is the set of coordinatewise valuations of
//! lattice points. Independent oracles (random lattice sampling, Hermite
//! reduction, finite-field survival counts, amoebas, survival-function cube
//! masses) cross-check those constructions numerically.

pub mod error;
pub mod ext;
pub mod series;
pub mod subset;
pub mod lattice;
pub mod entropy;
pub mod tropical;
pub mod polyhedral;
pub mod oracle;
pub mod fixtures;
pub mod amoeba;
pub mod measure;
pub mod io;

pub use error::{Error, Result};
pub use ext::{ExtRational, Rational};
pub use lattice::LatticeMatrix;
pub use entropy::{BimatroidTable, EntropyVector};
pub use series::{FpPuiseuxPoly, PuiseuxPoly};
pub use subset::Subset;
pub use tropical::TropicalPoint;
pub use polyhedral::{Cell, Complex};
pub use fixtures::Fixture;
