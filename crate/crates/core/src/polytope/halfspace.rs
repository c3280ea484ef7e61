use std::fmt;

use num_traits::{Signed, Zero};

use crate::kernel::{Scalar, Vector};

/// The halfspace `{x : normal·x ≤ offset}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: Scalar,
}

impl Halfspace {
    pub fn new(normal: Vector, offset: Scalar) -> Self {
        Halfspace { normal, offset }
    }

    /// Rescaled so the first nonzero normal coordinate is ±1.
    pub fn canonical(&self) -> Halfspace {
        match self.normal.canonical_factor() {
            Some(f) => Halfspace { normal: self.normal.scale(&f), offset: &self.offset * &f },
            None => self.clone(),
        }
    }

    pub fn value(&self, x: &Vector) -> Scalar {
        self.normal.dot(x)
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.normal.dot(x) <= self.offset
    }

    pub fn is_tight(&self, x: &Vector) -> bool {
        self.normal.dot(x) == self.offset
    }

    /// Slack `offset − normal·x`; negative when violated.
    pub fn slack(&self, x: &Vector) -> Scalar {
        &self.offset - self.normal.dot(x)
    }

    pub fn translate(&self, t: &Vector) -> Halfspace {
        Halfspace { normal: self.normal.clone(), offset: &self.offset + self.normal.dot(t) }
    }

    /// Image under `x ↦ ρx`, in canonical form.
    pub fn scale(&self, rho: &Scalar) -> Halfspace {
        if rho.is_negative() {
            Halfspace { normal: -&self.normal, offset: &self.offset * &(-rho) }
        } else {
            Halfspace { normal: self.normal.clone(), offset: &self.offset * rho }
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.normal.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·x ≤ {}", self.normal, self.offset)
    }
}
