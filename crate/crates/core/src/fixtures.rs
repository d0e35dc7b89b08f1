//! Named worked-example lattices used by tests, benches and the CLI.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::LatticeMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fixture {
    /// `[[1,1,1],[0,t,t²]]`, a rank-2 lattice in `K³`.
    Staircase,
    /// `[[1−t⁵, t+t³],[3+t², 3t+t³]]`, full rank in `K²`.
    Planar,
    /// A full-rank `3×3` matrix with polynomial entries up to degree 3.
    Cubic,
    /// `[[1,1,1],[0,t⁴,t²]]`.
    Skew,
    /// `[[1,t,1],[t,1,1]]`, whose reduction mod 2 misses the valuation `(0,0,0)`.
    ClosureCaveat,
    /// `[[1,1],[0,t]]`, used for amoebas.
    Corner,
    /// `[[1,t,t⁻¹],[0,1,t⁻¹]]`.
    TropicalLine,
}

impl Fixture {
    pub const ALL: [Fixture; 7] = [
        Fixture::Staircase,
        Fixture::Planar,
        Fixture::Cubic,
        Fixture::Skew,
        Fixture::ClosureCaveat,
        Fixture::Corner,
        Fixture::TropicalLine,
    ];

    /// The five lattices whose entropy vectors have published tables.
    pub const WORKED: [Fixture; 5] = [
        Fixture::Staircase,
        Fixture::Planar,
        Fixture::Cubic,
        Fixture::Skew,
        Fixture::ClosureCaveat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Staircase => "staircase",
            Fixture::Planar => "planar",
            Fixture::Cubic => "cubic",
            Fixture::Skew => "skew",
            Fixture::ClosureCaveat => "closure_caveat",
            Fixture::Corner => "corner",
            Fixture::TropicalLine => "tropical_line",
        }
    }

    pub fn rows(self) -> Vec<Vec<&'static str>> {
        match self {
            Fixture::Staircase => vec![vec!["1", "1", "1"], vec!["0", "t", "t^2"]],
            Fixture::Planar => vec![vec!["1-t^5", "t+t^3"], vec!["3+t^2", "3*t+t^3"]],
            Fixture::Cubic => vec![
                vec!["1", "1", "1"],
                vec!["1", "1+t^2", "1+t+t^2"],
                vec!["1+t^3", "1+2*t^2+t^3", "1+t+2*t^2+t^3"],
            ],
            Fixture::Skew => vec![vec!["1", "1", "1"], vec!["0", "t^4", "t^2"]],
            Fixture::ClosureCaveat => vec![vec!["1", "t", "1"], vec!["t", "1", "1"]],
            Fixture::Corner => vec![vec!["1", "1"], vec!["0", "t"]],
            Fixture::TropicalLine => vec![vec!["1", "t", "t^-1"], vec!["0", "1", "t^-1"]],
        }
    }

    pub fn matrix(self) -> LatticeMatrix {
        LatticeMatrix::parse(&self.rows()).expect("fixture matrices are valid")
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownExample(s.to_string()))
    }
}
