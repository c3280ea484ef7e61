//! Exact rational scalars, dense linear algebra and the certified LP solver
//! that every geometric routine builds on.

pub mod linalg;
pub mod lp;
pub mod scalar;
pub mod vector;

pub use linalg::{affine_hull, linear_solve, AffineHull, LinearSolution};
pub use lp::{lp_solve, LpProblem, LpSolution, LpStatus, Relation, Sense};
pub use scalar::{int, parse_scalar, rat, to_decimal, to_f64, Scalar};
pub use vector::Vector;
