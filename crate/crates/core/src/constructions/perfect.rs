//! Perfectness probe: every complete body of constant width?

use super::eggleston::{eggleston_witness, facet_pair_scan, FacetPair, NonPerfectWitness};
use crate::kernel::{rat, Scalar};
use crate::polytope::Body;
use crate::predicates::symmetral_half;
use crate::Error;

#[derive(Clone, Debug)]
pub enum PerfectStatus {
    NotPerfect(Box<NonPerfectWitness>),
    /// Every planar gauge is perfect; so is every gauge on the line.
    Perfect2D,
    /// No single-vertex facet pair was found. Perfectness is not decided.
    UndecidedNecessaryPassed,
}

#[derive(Clone, Debug)]
pub struct PerfectVerdict {
    pub status: PerfectStatus,
    pub notes: Vec<String>,
}

impl PerfectVerdict {
    pub fn is_not_perfect(&self) -> bool {
        matches!(self.status, PerfectStatus::NotPerfect(_))
    }
}

pub fn perfect_probe(c: &Body) -> Result<PerfectVerdict, Error> {
    perfect_probe_with(c, &rat(1, 2))
}

/// Probes `(C − C)/2`, which has the same complete and constant-width bodies
/// as `C`.
pub fn perfect_probe_with(c: &Body, epsilon: &Scalar) -> Result<PerfectVerdict, Error> {
    if !c.is_full_dimensional() {
        return Err(Error::DegenerateGauge);
    }
    let mut notes = Vec::new();
    if c.dim() <= 2 {
        notes.push(format!("dimension {} gauges are perfect", c.dim()));
        return Ok(PerfectVerdict { status: PerfectStatus::Perfect2D, notes });
    }
    let sym = symmetral_half(c);
    let simplex_difference = c.is_simplex();
    if simplex_difference {
        notes.push("C − C is the difference body of a simplex".into());
    }
    let pairs = facet_pair_scan(&sym)?;
    let triggers: Vec<&FacetPair> = pairs.iter().filter(|p| p.is_trigger()).collect();
    notes.push(format!("{} intersecting facet pairs, {} meet in a single vertex", pairs.len(), triggers.len()));
    if triggers.is_empty() {
        if simplex_difference {
            return Err(Error::Internal("simplex difference body without a single-vertex facet pair".into()));
        }
        notes.push("every intersecting facet pair shares at least an edge".into());
        return Ok(PerfectVerdict { status: PerfectStatus::UndecidedNecessaryPassed, notes });
    }
    let witness = eggleston_witness(&sym, epsilon)?;
    notes.push(format!(
        "facets {} and {} meet only in {}; completion adjoined {} points",
        witness.facets.0, witness.facets.1, witness.vertex, witness.completion_iterations
    ));
    Ok(PerfectVerdict { status: PerfectStatus::NotPerfect(Box::new(witness)), notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cross, cube, tetrahedron};
    use crate::predicates::{is_complete, is_constant_width};

    #[test]
    fn planar_gauges_are_perfect() {
        let hexagon = Body::from_i64(&[&[2, 0], &[1, 2], &[-1, 2], &[-2, 0], &[-1, -2], &[1, -2]]).unwrap();
        assert!(matches!(perfect_probe(&hexagon).unwrap().status, PerfectStatus::Perfect2D));
        let triangle = Body::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(perfect_probe(&triangle).unwrap().status, PerfectStatus::Perfect2D));
    }

    #[test]
    fn octahedron_is_not_perfect() {
        let verdict = perfect_probe(&cross(3)).unwrap();
        let PerfectStatus::NotPerfect(w) = verdict.status else { panic!("expected a witness") };
        assert!(w.verify().unwrap());
        assert!(is_complete(&w.ystar, &cross(3)).unwrap().is_complete);
        assert!(!is_constant_width(&w.ystar, &cross(3)).unwrap().is_cw);
    }

    #[test]
    fn tetrahedron_difference_is_not_perfect() {
        let s = tetrahedron();
        let cc = s.difference_body().clone();
        for (gauge, factor) in [(s, crate::kernel::int(2)), (cc.clone(), crate::kernel::int(1))] {
            let verdict = perfect_probe(&gauge).unwrap();
            let PerfectStatus::NotPerfect(w) = verdict.status else { panic!("expected a witness") };
            // the shared vertex is a difference p^j − p^i of vertices of S
            let p = w.vertex.scale(&factor);
            assert!(s_vertices_differ(&tetrahedron(), &p));
            assert!(cc.vertices().contains(&p));
            assert!(w.verify().unwrap());
        }
    }

    fn s_vertices_differ(s: &Body, p: &crate::kernel::Vector) -> bool {
        s.vertices().iter().any(|a| s.vertices().iter().any(|b| &(a - b) == p))
    }

    #[test]
    fn cube_is_undecided() {
        assert!(matches!(perfect_probe(&cube(3)).unwrap().status, PerfectStatus::UndecidedNecessaryPassed));
    }

    #[test]
    fn flat_gauge_is_rejected() {
        let flat = Body::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert!(matches!(perfect_probe(&flat), Err(Error::DegenerateGauge)));
    }
}
