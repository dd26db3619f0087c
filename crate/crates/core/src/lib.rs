//! Maximum-weight co-3-plexes in chordal graphs.
//!
//! A co-3-plex is a vertex subset inducing a subgraph of maximum degree two.
//! In a chordal graph every connected component of such a subgraph is an
//! induced path or a triangle, which gives an LP over vertex, triangle and
//! path columns whose feasible region is integral. The path columns are
//! exponentially many, so [`colgen::solve_co3plex`] prices them on demand
//! with an exact maximum vertex-and-edge-weighted induced path search.
//!
//! Everything is computed over exact rationals. The [`auxgraph`] and
//! [`verify`] modules hold the desk-scale machinery used to check the
//! structural facts the solver relies on.

pub mod auxgraph;
pub mod chordal;
pub mod colgen;
pub mod dimacs;
mod error;
pub mod exec;
pub mod generate;
pub mod graph;
pub mod lp;
pub mod pricing;
pub mod structures;
pub mod verify;

pub use error::{Error, Result};
pub use exec::{Execution, SearchOptions};
pub use graph::{Graph, VertexSet};

/// Exact rational used for weights, LP data and duals.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` as a [`Rational`].
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Builds an integer [`Rational`].
pub fn int(value: i64) -> Rational {
    Rational::from_integer(value.into())
}

/// Renders a rational as `num/den`, always with an explicit denominator.
pub fn fraction(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}
