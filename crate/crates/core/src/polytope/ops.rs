//! Set operations on bodies.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::body::{compute_hull, Body, HPolytope, VPolytope, MAX_DIM};
use super::dd::{extreme_rays, integer_row};
use super::halfspace::Halfspace;
use crate::kernel::lp::{feasible_point, lp_solve, minimize_over, HalfspaceLp, LpProblem, LpStatus};
use crate::kernel::{Scalar, Vector};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

/// A point dropped by [`hull_vertices`] with convex coefficients over the
/// returned vertices that reproduce it.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscardedPoint {
    pub point: Vector,
    pub coefficients: Vec<(usize, Scalar)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HullResult {
    pub polytope: VPolytope,
    pub discarded: Vec<DiscardedPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeValue {
    Finite(Scalar),
    Infinite,
}

impl GaugeValue {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            GaugeValue::Finite(v) => Some(v),
            GaugeValue::Infinite => None,
        }
    }
}

/// Result of intersecting two H-polytopes.
#[derive(Clone, Debug)]
pub enum Intersection {
    Body {
        body: Body,
        /// Input halfspaces found redundant, each with the LP maximum of its
        /// normal over the remaining constraints (never above its offset).
        redundant: Vec<(Halfspace, Scalar)>,
    },
    Empty,
}

pub fn support(k: &Body, a: &Vector) -> Result<(Scalar, Vec<Vector>), Error> {
    k.support(a)
}

/// Exact classification of `x` against the facet description of `k`.
/// Bodies with empty interior have no inside: their points are on the
/// boundary.
pub fn membership(k: &Body, x: &Vector) -> Result<Membership, Error> {
    if x.dim() != k.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: x.dim() });
    }
    let h = k.h_rep();
    if !h.contains(x) {
        return Ok(Membership::Outside);
    }
    if !k.is_full_dimensional() || h.halfspaces.iter().any(|f| f.is_tight(x)) {
        Ok(Membership::Boundary)
    } else {
        Ok(Membership::Inside)
    }
}

/// Irredundant vertex set of `conv(points)`; each dropped input point comes
/// with convex coefficients certifying it is not a vertex.
pub fn hull_vertices(points: &[Vector]) -> Result<HullResult, Error> {
    let hull = compute_hull(points)?;
    let vertices = hull.vertices;
    let mut discarded = Vec::new();
    let mut seen: Vec<&Vector> = Vec::new();
    for p in points {
        if vertices.binary_search(p).is_ok() || seen.contains(&p) {
            continue;
        }
        seen.push(p);
        let mut lp = LpProblem::minimize(Vector::zeros(vertices.len())).nonnegative();
        for i in 0..p.dim() {
            lp = lp.eq(Vector::new(vertices.iter().map(|v| v[i].clone()).collect()), p[i].clone());
        }
        lp = lp.eq(Vector::new(vec![Scalar::one(); vertices.len()]), Scalar::one());
        let sol = lp_solve(&lp)?;
        let mu = sol.primal.ok_or_else(|| Error::Internal("hull point without convex coefficients".into()))?;
        let coefficients = mu.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
        discarded.push(DiscardedPoint { point: p.clone(), coefficients });
    }
    Ok(HullResult { polytope: VPolytope { dim: hull.hrep.dim, vertices }, discarded })
}

/// Facet description of a full-dimensional V-polytope.
pub fn facets_of(v: &VPolytope) -> Result<HPolytope, Error> {
    let hull = compute_hull(&v.vertices)?;
    if hull.affine.dim() != v.dim {
        return Err(Error::NotFullDimensional);
    }
    Ok(hull.hrep)
}

/// Vertex enumeration of a bounded, nonempty H-polytope.
pub fn vertices_of(h: &HPolytope) -> Result<VPolytope, Error> {
    let n = h.dim;
    if n == 0 || n > MAX_DIM {
        return Err(Error::DimensionTooHigh(n));
    }
    let all = h.all_halfspaces();
    if let Some(bad) = all.iter().find(|f| f.normal.dim() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.normal.dim() });
    }
    // homogenized cone over (x, t): t ≥ 0 and b t − a·x ≥ 0
    let mut rows = Vec::with_capacity(all.len() + 1);
    let mut t_row = vec![Scalar::zero(); n + 1];
    t_row[n] = Scalar::one();
    rows.push(integer_row(&t_row));
    for f in &all {
        let mut r: Vec<Scalar> = f.normal.iter().map(|c| -c.clone()).collect();
        r.push(f.offset.clone());
        rows.push(integer_row(&r));
    }
    let Some(rays) = extreme_rays(&rows, n + 1) else {
        return match feasible_point(&all, n)? {
            Some(_) => Err(Error::Unbounded),
            None => Err(Error::EmptyPolytope),
        };
    };
    let mut vertices = Vec::new();
    let mut recession = false;
    for r in rays {
        let t = &r[n];
        if t.is_zero() {
            recession = true;
            continue;
        }
        let t = BigRational::from_integer(t.clone());
        vertices.push(Vector::new(r[..n].iter().map(|x| BigRational::from_integer(x.clone()) / &t).collect()));
    }
    if vertices.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    if recession {
        return Err(Error::Unbounded);
    }
    vertices.sort();
    vertices.dedup();
    Ok(VPolytope { dim: n, vertices })
}

/// Body described by an H-polytope.
pub fn body_from_hrep(h: &HPolytope) -> Result<Body, Error> {
    Body::new(vertices_of(h)?.vertices)
}

pub fn minkowski_sum(k: &Body, l: &Body) -> Result<Body, Error> {
    if k.dim() != l.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: l.dim() });
    }
    let mut sums = Vec::with_capacity(k.num_vertices() * l.num_vertices());
    for x in k.vertices() {
        for y in l.vertices() {
            sums.push(x + y);
        }
    }
    Body::new(sums)
}

pub fn scale_reflect(k: &Body, rho: &Scalar) -> Body {
    k.scale(rho)
}

/// `K − K`.
pub fn central_symmetral(k: &Body) -> Body {
    k.difference_body().clone()
}

/// Intersection of two H-polytopes. Redundant input halfspaces are removed,
/// each certified by an LP maximum.
pub fn intersect(h1: &HPolytope, h2: &HPolytope) -> Result<Intersection, Error> {
    if h1.dim != h2.dim {
        return Err(Error::DimensionMismatch { expected: h1.dim, found: h2.dim });
    }
    let n = h1.dim;
    let mut all = h1.all_halfspaces();
    all.extend(h2.all_halfspaces());
    all.sort();
    all.dedup();
    if feasible_point(&all, n)?.is_none() {
        return Ok(Intersection::Empty);
    }
    let mut kept: Vec<Halfspace> = all.clone();
    let mut redundant = Vec::new();
    let mut i = 0;
    while i < kept.len() {
        let candidate = kept[i].clone();
        let others: Vec<Halfspace> = kept.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, h)| h.clone()).collect();
        match minimize_over(&-&candidate.normal, &others)? {
            HalfspaceLp::Optimal { value, .. } if -value.clone() <= candidate.offset => {
                redundant.push((candidate, -value));
                kept.remove(i);
            }
            _ => i += 1,
        }
    }
    let h = HPolytope { dim: n, halfspaces: kept, equations: Vec::new() };
    let body = body_from_hrep(&h)?;
    Ok(Intersection::Body { body, redundant })
}

/// Intersection of two bodies through their facet descriptions.
pub fn intersect_bodies(k: &Body, l: &Body) -> Result<Option<Body>, Error> {
    if k.dim() != l.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: l.dim() });
    }
    let mut all = k.h_rep().all_halfspaces();
    all.extend(l.h_rep().all_halfspaces());
    let h = HPolytope { dim: k.dim(), halfspaces: all, equations: Vec::new() };
    match vertices_of(&h) {
        Ok(v) => Ok(Some(Body::new(v.vertices)?)),
        Err(Error::EmptyPolytope) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn conv_union(k: &Body, l: &Body) -> Result<Body, Error> {
    if k.dim() != l.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: l.dim() });
    }
    let mut pts = k.vertices().to_vec();
    pts.extend_from_slice(l.vertices());
    Body::new(pts)
}

/// Two-sided vertex membership.
pub fn equal_sets(k: &Body, l: &Body) -> bool {
    if k.dim() != l.dim() {
        return false;
    }
    if k.vertices() == l.vertices() {
        return true;
    }
    k.contains_body(l) && l.contains_body(k)
}

/// `min{λ ≥ 0 : x ∈ λK}` through an LP over the vertices of `K`.
pub fn gauge_value(k: &Body, x: &Vector) -> Result<GaugeValue, Error> {
    if x.dim() != k.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: x.dim() });
    }
    if !k.contains(&Vector::zeros(k.dim())) {
        return Err(Error::OriginNotInBody);
    }
    let m = k.num_vertices();
    let mut lp = LpProblem::minimize(Vector::new(vec![Scalar::one(); m])).nonnegative();
    for i in 0..k.dim() {
        lp = lp.eq(Vector::new(k.vertices().iter().map(|v| v[i].clone()).collect()), x[i].clone());
    }
    let sol = lp_solve(&lp)?;
    Ok(match sol.status {
        LpStatus::Optimal => GaugeValue::Finite(sol.objective_value.expect("optimal value")),
        _ => GaugeValue::Infinite,
    })
}

/// Gauge of `x` in a body with the origin in its interior, read off the
/// facets: `max_j a_j·x / b_j`, floored at zero.
pub(crate) fn gauge_by_facets(k: &Body, x: &Vector) -> Scalar {
    let mut best = Scalar::zero();
    for f in k.facets() {
        debug_assert!(f.offset.is_positive());
        let v = f.normal.dot(x) / &f.offset;
        if v > best {
            best = v;
        }
    }
    best
}
