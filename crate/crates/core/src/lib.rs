//! Exact taxicab distinct-distance configurations.
//!
//! Builds the lattice configurations `Lambda_d(k)`, counts them three ways,
//! canonicalizes point sets under l1-similarity and searches finite rational
//! grids for maximum sets with at most `k` distinct distances.

pub mod cli;
pub mod counting;
pub mod error;
pub mod geometry;
pub mod io;
pub mod lemmas;
pub mod numeric;
pub mod render;
pub mod sampling;
pub mod search;
pub mod similarity;

pub use error::{Error, Result};
pub use geometry::{Configuration, DistanceSet, Metric, Point};
pub use numeric::Rational;
