//! Facet incidences of symmetric gauges and the witness that a gauge with
//! two facets meeting in a single vertex is not perfect.

use num_traits::{One, Zero};

use super::completion::{completion, DEFAULT_MAX_ITER};
use crate::kernel::linalg::affine_hull;
use crate::kernel::{rat, Scalar, Vector};
use crate::polytope::{vertices_of, Body, HPolytope, Halfspace};
use crate::predicates::{is_complete, is_constant_width, ConstantWidthReport};
use crate::radii::diameter;
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct FacetPair {
    /// Indices into `C.facets()`.
    pub first: usize,
    pub second: usize,
    /// Vertices of `C` on both facets.
    pub common: Vec<Vector>,
    /// Affine dimension of the intersection.
    pub dim: usize,
}

impl FacetPair {
    pub fn is_trigger(&self) -> bool {
        self.dim == 0
    }
}

fn check_symmetric(c: &Body) -> Result<(), Error> {
    if !c.is_full_dimensional() {
        return Err(Error::DegenerateGauge);
    }
    if c.dim() < 3 {
        return Err(Error::DimensionTooLow(c.dim()));
    }
    if !c.is_centrally_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(())
}

/// Intersection of two facets of `C`, or `None` when they are disjoint.
pub fn facet_pair(c: &Body, i: usize, j: usize) -> Option<FacetPair> {
    let (f, g) = (&c.facets()[i], &c.facets()[j]);
    let common: Vec<Vector> = c.vertices().iter().filter(|p| f.is_tight(p) && g.is_tight(p)).cloned().collect();
    if common.is_empty() {
        return None;
    }
    let dim = affine_hull(&common).ok()?.dim();
    Some(FacetPair { first: i, second: j, common, dim })
}

/// Every pair of distinct intersecting facets with the dimension of the
/// intersection. Facets are visited from the lexicographically largest
/// canonical normal down, so the first trigger is deterministic.
pub fn facet_pair_scan(c: &Body) -> Result<Vec<FacetPair>, Error> {
    check_symmetric(c)?;
    let m = c.facets().len();
    let mut out = Vec::new();
    for i in (0..m).rev() {
        for j in (0..i).rev() {
            out.extend(facet_pair(c, i, j));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplicityReport {
    pub is_simple: bool,
    /// First vertex, scanning from the lexicographically largest, lying on
    /// more than three facets.
    pub witness: Option<Vector>,
    pub witness_facets: usize,
}

pub fn simplicity_check_3d(c: &Body) -> Result<SimplicityReport, Error> {
    if c.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: c.dim() });
    }
    if !c.is_full_dimensional() {
        return Err(Error::DegenerateGauge);
    }
    for p in c.vertices().iter().rev() {
        let count = c.facets().iter().filter(|f| f.is_tight(p)).count();
        if count > 3 {
            return Ok(SimplicityReport { is_simple: false, witness: Some(p.clone()), witness_facets: count });
        }
    }
    Ok(SimplicityReport { is_simple: true, witness: None, witness_facets: 3 })
}

#[derive(Clone, Debug)]
pub struct NonPerfectWitness {
    /// The origin-centered gauge everything below refers to.
    pub gauge: Body,
    pub vertex: Vector,
    pub facets: (usize, usize),
    /// Facet normals scaled so that `a^i · x = 1` on `F_i`.
    pub normals: (Vector, Vector),
    /// `H_{a,1}` supports `C` only in `vertex`.
    pub direction: Vector,
    pub epsilon: Scalar,
    pub x1: Vector,
    pub x2: Vector,
    /// `C ∩ (x² − x¹ + C) ∩ H_{a,1−ε}`.
    pub slice: Body,
    /// `conv({0, x² − x¹} ∪ slice)`.
    pub y: Body,
    pub ystar: Body,
    pub completion_iterations: usize,
    pub cw_failure: ConstantWidthReport,
}

impl NonPerfectWitness {
    /// Re-derives every claim from the stored bodies.
    pub fn verify(&self) -> Result<bool, Error> {
        let c = &self.gauge;
        let one = Scalar::one();
        let level = &one - &self.epsilon;
        let (a1, a2) = &self.normals;
        let on_plane = |x: &Vector| self.direction.dot(x) == level;
        let t = &self.x2 - &self.x1;
        let shifted = c.translate(&t);
        let pair = facet_pair(c, self.facets.0, self.facets.1);
        let ok = pair.is_some_and(|p| p.common == vec![self.vertex.clone()])
            && c.face(&self.direction) == vec![self.vertex.clone()]
            && c.support_value(&self.direction) == one
            && c.support_value(a1) == one
            && c.support_value(a2) == one
            && a1.dot(&self.x1) == one
            && a2.dot(&self.x2) == one
            && on_plane(&self.x1)
            && on_plane(&self.x2)
            && c.contains(&self.x1)
            && c.contains(&self.x2)
            && self.slice.vertices().iter().all(|p| on_plane(p) && c.contains(p) && shifted.contains(p))
            && self.y.contains(&Vector::zeros(c.dim()))
            && self.y.contains(&t)
            && self.y.contains_body(&self.slice)
            && diameter(&self.y, c)?.value == one
            && diameter(&self.ystar, c)?.value == one
            && self.ystar.contains_body(&self.y)
            && c.contains_body(&self.ystar)
            && shifted.contains_body(&self.ystar)
            && is_complete(&self.ystar, c)?.is_complete
            && !is_constant_width(&self.ystar, c)?.is_cw
            && !self.cw_failure.is_cw;
        Ok(ok)
    }
}

/// Candidates for `a`, all inside the normal cone of the vertex: the mean of
/// the two normals first, then other convex combinations.
fn supporting_directions(a1: &Vector, a2: &Vector) -> Vec<Vector> {
    [rat(1, 2), rat(1, 3), rat(2, 3), rat(1, 4), rat(3, 4)]
        .into_iter()
        .map(|t| a1.scale(&t) + a2.scale(&(Scalar::one() - &t)))
        .collect()
}

/// `F ∩ H_{a,level}` as a vertex list, `F = {x ∈ C : f·x = 1}`.
fn facet_slice(c: &Body, f: &Vector, a: &Vector, level: &Scalar) -> Result<Vec<Vector>, Error> {
    let h = HPolytope {
        dim: c.dim(),
        halfspaces: c.facets().to_vec(),
        equations: vec![Halfspace::new(f.clone(), Scalar::one()), Halfspace::new(a.clone(), level.clone())],
    };
    Ok(vertices_of(&h)?.vertices)
}

const MAX_RETRIES: usize = 8;

/// Builds a complete body of non-constant width from the first pair of
/// facets meeting in a single vertex. The gauge is moved to its center
/// first; `epsilon` is halved on failure a bounded number of times.
pub fn eggleston_witness(c: &Body, epsilon: &Scalar) -> Result<NonPerfectWitness, Error> {
    if !(*epsilon > Scalar::zero() && *epsilon < Scalar::one()) {
        return Err(Error::BadParams("epsilon must lie in (0, 1)".into()));
    }
    check_symmetric(c)?;
    let center = Vector::barycenter(c.vertices());
    let c0 = c.translate(&-&center);
    let pair = facet_pair_scan(&c0)?.into_iter().find(FacetPair::is_trigger).ok_or(Error::NoTrigger)?;
    let v = pair.common[0].clone();
    let normalize = |h: &Halfspace| h.normal.scale(&(Scalar::one() / &h.offset));
    let a1 = normalize(&c0.facets()[pair.first]);
    let a2 = normalize(&c0.facets()[pair.second]);
    let a = supporting_directions(&a1, &a2)
        .into_iter()
        .find(|a| c0.face(a) == vec![v.clone()])
        .ok_or_else(|| Error::ConstructionFailed("no direction supports the gauge only at the vertex".into()))?;

    let mut eps = epsilon.clone();
    let mut last = String::new();
    for _ in 0..MAX_RETRIES {
        match build(&c0, &pair, &v, &a1, &a2, &a, &eps) {
            Ok(Some(w)) => return Ok(w),
            Ok(None) => last = format!("verification failed at epsilon {eps}"),
            Err(Error::NotConverged { iterations, .. }) => {
                last = format!("completion did not converge after {iterations} steps at epsilon {eps}")
            }
            Err(e) => return Err(e),
        }
        eps /= Scalar::from_integer(2.into());
    }
    Err(Error::ConstructionFailed(last))
}

fn build(
    c: &Body,
    pair: &FacetPair,
    v: &Vector,
    a1: &Vector,
    a2: &Vector,
    a: &Vector,
    eps: &Scalar,
) -> Result<Option<NonPerfectWitness>, Error> {
    let level = Scalar::one() - eps;
    let s1 = facet_slice(c, a1, a, &level)?;
    let s2 = facet_slice(c, a2, a, &level)?;
    let x1 = Vector::barycenter(&s1);
    let x2 = Vector::barycenter(&s2);
    let t = &x2 - &x1;
    let mut halfspaces = c.facets().to_vec();
    halfspaces.extend(c.facets().iter().map(|f| f.translate(&t)));
    let plane = HPolytope { dim: c.dim(), halfspaces, equations: vec![Halfspace::new(a.clone(), level)] };
    let slice = Body::new(vertices_of(&plane)?.vertices)?;
    let mut pts = slice.vertices().to_vec();
    pts.push(Vector::zeros(c.dim()));
    pts.push(t.clone());
    let y = Body::new(pts)?.with_name("Y");
    if diameter(&y, c)?.value != Scalar::one() {
        return Ok(None);
    }
    let done = completion(&y, c, DEFAULT_MAX_ITER)?;
    let cw_failure = is_constant_width(&done.body, c)?;
    let witness = NonPerfectWitness {
        gauge: c.clone(),
        vertex: v.clone(),
        facets: (pair.first, pair.second),
        normals: (a1.clone(), a2.clone()),
        direction: a.clone(),
        epsilon: eps.clone(),
        x1,
        x2,
        slice,
        y,
        ystar: done.body.with_name("Ystar"),
        completion_iterations: done.iterations,
        cw_failure,
    };
    Ok(witness.verify()?.then_some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cross, cube, q, tetrahedron, v};
    use crate::kernel::int;
    use crate::polytope::{central_symmetral, equal_sets};

    fn rhombic_dodecahedron() -> Body {
        let mut pts: Vec<Vector> = cube(3).vertices().to_vec();
        for i in 0..3 {
            pts.push(Vector::unit(3, i).scale(&int(2)));
            pts.push(Vector::unit(3, i).scale(&int(-2)));
        }
        Body::new(pts).unwrap()
    }

    fn double_pyramid() -> Body {
        super::super::generate::double_pyramid(4).unwrap()
    }

    /// Dimension of `F_i ∩ F_j` from the rank of the tight vertex set,
    /// computed without the scan.
    fn brute_dims(c: &Body) -> Vec<((Vector, Vector), Option<usize>)> {
        let fs = c.facets();
        let mut out = Vec::new();
        for f in fs {
            for g in fs {
                if f == g {
                    continue;
                }
                let common: Vec<Vector> =
                    c.vertices().iter().filter(|p| f.is_tight(p) && g.is_tight(p)).cloned().collect();
                let dim = (!common.is_empty()).then(|| {
                    let base = &common[0];
                    let diffs: Vec<Vector> = common.iter().map(|p| p - base).collect();
                    crate::kernel::linalg::rank(&diffs)
                });
                out.push(((f.normal.clone(), g.normal.clone()), dim));
            }
        }
        out
    }

    #[test]
    fn cube_pairs_share_edges() {
        let c = cube(3);
        let pairs = facet_pair_scan(&c).unwrap();
        assert_eq!(pairs.len(), 12);
        assert!(pairs.iter().all(|p| p.dim == 1));
    }

    #[test]
    fn octahedron_trigger() {
        let c = cross(3);
        let pairs = facet_pair_scan(&c).unwrap();
        let first = pairs.iter().find(|p| p.is_trigger()).unwrap();
        assert_eq!(c.facets()[first.first].normal, v(&[1, 1, 1]));
        assert_eq!(c.facets()[first.second].normal, v(&[1, -1, -1]));
        assert_eq!(first.common, vec![v(&[1, 0, 0])]);
        // each facet of the octahedron meets its 3 neighbours in edges and
        // 3 more facets in single vertices
        assert_eq!(pairs.iter().filter(|p| p.dim == 1).count(), 12);
        assert_eq!(pairs.iter().filter(|p| p.dim == 0).count(), 12);
    }

    #[test]
    fn scan_agrees_with_brute_force_and_is_symmetric() {
        for c in [cube(3), cross(3), rhombic_dodecahedron(), central_symmetral(&tetrahedron()), double_pyramid()] {
            let fs = c.facets();
            let index = |n: &Vector| fs.iter().position(|f| f.normal == *n).unwrap();
            for ((f, g), dim) in brute_dims(&c) {
                let (i, j) = (index(&f), index(&g));
                assert_eq!(facet_pair(&c, i, j).map(|p| p.dim), dim);
                assert_eq!(facet_pair(&c, i, j).map(|p| p.dim), facet_pair(&c, j, i).map(|p| p.dim));
            }
        }
    }

    #[test]
    fn double_pyramid_has_no_trigger() {
        let c = double_pyramid();
        assert!(!c.is_centrally_symmetric() || facet_pair_scan(&c).unwrap().iter().all(|p| p.dim >= 1));
        // the scan needs symmetry; check the incidences directly as well
        for i in 0..c.facets().len() {
            for j in 0..i {
                if let Some(p) = facet_pair(&c, i, j) {
                    assert!(p.dim >= 1);
                }
            }
        }
    }

    #[test]
    fn scan_preconditions() {
        assert!(matches!(facet_pair_scan(&cube(2)), Err(Error::DimensionTooLow(2))));
        assert!(matches!(facet_pair_scan(&tetrahedron()), Err(Error::NotSymmetric)));
    }

    #[test]
    fn simplicity() {
        assert!(simplicity_check_3d(&cube(3)).unwrap().is_simple);
        let o = simplicity_check_3d(&cross(3)).unwrap();
        assert!(!o.is_simple);
        assert_eq!(o.witness, Some(v(&[1, 0, 0])));
        assert_eq!(o.witness_facets, 4);
        let r = simplicity_check_3d(&rhombic_dodecahedron()).unwrap();
        assert_eq!(r.witness, Some(v(&[2, 0, 0])));
        assert_eq!(r.witness_facets, 4);
        assert!(matches!(simplicity_check_3d(&cube(2)), Err(Error::DimensionMismatch { expected: 3, found: 2 })));
    }

    #[test]
    fn octahedron_witness() {
        let c = cross(3);
        let w = eggleston_witness(&c, &rat(1, 2)).unwrap();
        assert_eq!(w.vertex, v(&[1, 0, 0]));
        assert_eq!(w.direction, v(&[1, 0, 0]));
        assert_eq!(w.epsilon, rat(1, 2));
        assert_eq!(w.x1, q(&[(1, 2), (1, 4), (1, 4)]));
        assert_eq!(w.x2, q(&[(1, 2), (-1, 4), (-1, 4)]));
        // X is the segment of the slice x₁ = 1/2 shared with the translate
        let expected = Body::new(vec![q(&[(1, 2), (-1, 2), (0, 1)]), q(&[(1, 2), (0, 1), (-1, 2)])]).unwrap();
        assert!(equal_sets(&w.slice, &expected));
        assert!(w.verify().unwrap());
        assert!(!w.cw_failure.is_cw);
        let box_ = intersect_with_translate(&c, &(&w.x2 - &w.x1));
        assert!(box_.contains_body(&w.ystar));
    }

    fn intersect_with_translate(c: &Body, t: &Vector) -> Body {
        crate::polytope::intersect_bodies(c, &c.translate(t)).unwrap().unwrap()
    }

    #[test]
    fn witness_errors() {
        assert!(matches!(eggleston_witness(&cube(3), &rat(1, 2)), Err(Error::NoTrigger)));
        assert!(matches!(eggleston_witness(&cross(3), &int(1)), Err(Error::BadParams(_))));
        assert!(matches!(eggleston_witness(&cross(3), &int(0)), Err(Error::BadParams(_))));
    }
}
