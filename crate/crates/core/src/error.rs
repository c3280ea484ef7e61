use thiserror::Error;

use crate::polytope::Body;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("body is not full-dimensional")]
    NotFullDimensional,
    #[error("ambient dimension {0} exceeds the supported maximum of 4")]
    DimensionTooHigh(usize),
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is empty")]
    EmptyPolytope,
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("origin is not contained in the body")]
    OriginNotInBody,
    #[error("gauge body is not full-dimensional")]
    DegenerateGauge,
    #[error("body is not full-dimensional")]
    DegenerateBody,
    #[error("first body is not contained in the second")]
    NotContained,
    #[error("body is not an n-simplex")]
    NotASimplex,
    #[error("body is not complete with respect to the gauge")]
    NotComplete,
    #[error("not a completion: {0}")]
    NotACompletion(String),
    #[error("gauge body is not centrally symmetric")]
    NotSymmetric,
    #[error("dimension {0} is too low for this operation")]
    DimensionTooLow(usize),
    #[error("no pair of facets meets in a single vertex")]
    NoTrigger,
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("completion did not converge after {iterations} iterations")]
    NotConverged { iterations: usize, partial: Box<Body> },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("mesh export supports dimensions 2 and 3, got {0}")]
    DimensionUnsupported(usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal certificate check failed: {0}")]
    Internal(String),
}
