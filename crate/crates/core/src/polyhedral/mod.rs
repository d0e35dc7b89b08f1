//! Exact polyhedral geometry over ℚ: linear algebra, a simplex solver, H/V
//! descriptions and the complex of linearity regions of `φ`.

pub mod complex;
pub mod linalg;
pub mod lp;
pub mod polyhedron;

pub use complex::{Cell, Complex};
pub use lp::Constraint;
pub use polyhedron::{lp_feasible, HPolyhedron, VRep};
