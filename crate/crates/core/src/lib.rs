//! Exact computations on polytopal convex bodies measured against a gauge
//! body: circumradius, inradius, diameter, width, Minkowski asymmetry, and
//! certified decisions for completeness, constant width, pseudo-completeness,
//! simplex reducedness and non-perfectness of gauges.
//!
//! All arithmetic is over arbitrary-precision rationals. Nothing in the
//! crate uses floating point except for display.

pub mod cli;
pub mod constructions;
mod error;
pub mod kernel;
pub mod polytope;
pub mod predicates;
pub mod radii;

#[cfg(test)]
mod fixtures;

pub use error::Error;
pub use kernel::{Scalar, Vector};
pub use polytope::Body;

pub type Result<T> = std::result::Result<T, Error>;
