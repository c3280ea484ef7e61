use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dd::{extreme_rays, integer_row};
use super::halfspace::Halfspace;
use crate::kernel::linalg::{affine_hull, null_space, rank, AffineHull};
use crate::kernel::{Scalar, Vector};
use crate::Error;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 4;

/// Irredundant vertex description of a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    pub dim: usize,
    pub vertices: Vec<Vector>,
}

/// Facet description: `halfspaces` are facet-defining within the affine hull
/// and `equations` (each `normal·x = offset`) cut out the affine hull. Both
/// lists are canonically scaled and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    pub dim: usize,
    pub halfspaces: Vec<Halfspace>,
    pub equations: Vec<Halfspace>,
}

impl HPolytope {
    pub fn contains(&self, x: &Vector) -> bool {
        self.equations.iter().all(|e| e.is_tight(x)) && self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// The same point set with each equation written as two halfspaces.
    pub fn all_halfspaces(&self) -> Vec<Halfspace> {
        let mut out = self.halfspaces.clone();
        for e in &self.equations {
            out.push(e.clone());
            out.push(Halfspace::new(-&e.normal, -e.offset.clone()));
        }
        out
    }

    fn map(&self, f: impl Fn(&Halfspace) -> Halfspace) -> HPolytope {
        let mut halfspaces: Vec<Halfspace> = self.halfspaces.iter().map(|h| f(h).canonical()).collect();
        let mut equations: Vec<Halfspace> = self.equations.iter().map(|h| f(h).canonical()).collect();
        halfspaces.sort();
        equations.sort();
        HPolytope { dim: self.dim, halfspaces, equations }
    }
}

/// Exact convex polytope kept in both representations.
///
/// The vertex list is irredundant and sorted lexicographically; the facet
/// description is filled at most once and then shared.
#[derive(Clone, Debug)]
pub struct Body {
    name: Option<String>,
    dim: usize,
    affine_dim: usize,
    vertices: Vec<Vector>,
    hrep: OnceLock<HPolytope>,
    difference: OnceLock<Box<Body>>,
}

pub(crate) struct Hull {
    pub vertices: Vec<Vector>,
    pub hrep: HPolytope,
    pub affine: AffineHull,
}

fn check_dims(points: &[Vector]) -> Result<usize, Error> {
    let dim = points.first().ok_or(Error::EmptyInput)?.dim();
    if dim == 0 {
        return Err(Error::DimensionTooLow(0));
    }
    if dim > MAX_DIM {
        return Err(Error::DimensionTooHigh(dim));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
    }
    Ok(dim)
}

/// Points likely to be vertices come first; the double description method
/// is much cheaper when interior points arrive late.
fn processing_order(points: &[Vector]) -> Vec<usize> {
    let n = points[0].dim();
    let mut first = Vec::new();
    let mut directions: Vec<Vector> = Vec::new();
    for i in 0..n {
        directions.push(Vector::unit(n, i));
        directions.push(-Vector::unit(n, i));
    }
    let ones = Vector::new(vec![Scalar::one(); n]);
    directions.push(-&ones);
    directions.push(ones);
    for d in &directions {
        let best = (0..points.len()).max_by(|&a, &b| d.dot(&points[a]).cmp(&d.dot(&points[b]))).expect("nonempty");
        if !first.contains(&best) {
            first.push(best);
        }
    }
    let centroid = Vector::barycenter(points);
    let mut rest: Vec<(Scalar, usize)> = (0..points.len())
        .filter(|i| !first.contains(i))
        .map(|i| {
            let d = &points[i] - &centroid;
            (d.dot(&d), i)
        })
        .collect();
    rest.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    first.extend(rest.into_iter().map(|(_, i)| i));
    first
}

/// Facets of the full-dimensional hull of `points` (in their own space).
fn full_dim_facets(points: &[Vector]) -> Vec<Halfspace> {
    let k = points[0].dim();
    let order = processing_order(points);
    let rows: Vec<_> = order
        .iter()
        .map(|&i| {
            let mut r: Vec<Scalar> = points[i].iter().map(|c| -c.clone()).collect();
            r.push(Scalar::one());
            integer_row(&r)
        })
        .collect();
    let rays = extreme_rays(&rows, k + 1).expect("full-dimensional point set gives a pointed cone");
    rays.into_iter()
        .map(|r| {
            let coords: Vec<Scalar> = r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            Halfspace::new(Vector::new(coords[..k].to_vec()), coords[k].clone()).canonical()
        })
        .collect()
}

pub(crate) fn compute_hull(points: &[Vector]) -> Result<Hull, Error> {
    let n = check_dims(points)?;
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let affine = affine_hull(&pts)?;
    let k = affine.dim();
    if k == 0 {
        let p = pts[0].clone();
        let equations = (0..n).map(|i| Halfspace::new(Vector::unit(n, i), p[i].clone())).collect();
        return Ok(Hull { vertices: vec![p], hrep: HPolytope { dim: n, halfspaces: Vec::new(), equations }, affine });
    }
    let projected: Vec<Vector> = if k == n { pts.clone() } else { pts.iter().map(|p| affine.project(p)).collect() };
    let facets = full_dim_facets(&projected);
    let vertices: Vec<Vector> = pts
        .iter()
        .zip(&projected)
        .filter(|(_, q)| {
            let tight: Vec<Vector> = facets.iter().filter(|h| h.is_tight(q)).map(|h| h.normal.clone()).collect();
            tight.len() >= k && rank(&tight) == k
        })
        .map(|(p, _)| p.clone())
        .collect();
    let mut halfspaces: Vec<Halfspace> = if k == n {
        facets
    } else {
        facets
            .into_iter()
            .map(|h| {
                let mut normal = Vector::zeros(n);
                let mut offset = h.offset.clone();
                for (j, &p) in affine.pivots.iter().enumerate() {
                    normal[p] = h.normal[j].clone();
                    offset += &h.normal[j] * &affine.base[p];
                }
                Halfspace::new(normal, offset).canonical()
            })
            .collect()
    };
    halfspaces.sort();
    let mut equations: Vec<Halfspace> = null_space(&affine.basis, n)
        .into_iter()
        .map(|e| {
            let offset = e.dot(&affine.base);
            Halfspace::new(e, offset).canonical()
        })
        .collect();
    equations.sort();
    Ok(Hull { vertices, hrep: HPolytope { dim: n, halfspaces, equations }, affine })
}

impl Body {
    /// Convex hull of `points`.
    pub fn new(points: Vec<Vector>) -> Result<Body, Error> {
        let hull = compute_hull(&points)?;
        Ok(Body::from_hull(hull))
    }

    pub(crate) fn from_hull(hull: Hull) -> Body {
        let body = Body {
            name: None,
            dim: hull.hrep.dim,
            affine_dim: hull.affine.dim(),
            vertices: hull.vertices,
            hrep: OnceLock::new(),
            difference: OnceLock::new(),
        };
        let _ = body.hrep.set(hull.hrep);
        body
    }

    /// Builds a body from a vertex list already known to be irredundant,
    /// together with its facet description.
    pub(crate) fn from_parts(mut vertices: Vec<Vector>, affine_dim: usize, hrep: HPolytope) -> Body {
        vertices.sort();
        let body = Body {
            name: None,
            dim: hrep.dim,
            affine_dim,
            vertices,
            hrep: OnceLock::new(),
            difference: OnceLock::new(),
        };
        let _ = body.hrep.set(hrep);
        body
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Body, Error> {
        Body::new(points.iter().map(|p| Vector::from_i64(p)).collect())
    }

    pub fn point(p: Vector) -> Result<Body, Error> {
        Body::new(vec![p])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Body {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn v_rep(&self) -> VPolytope {
        VPolytope { dim: self.dim, vertices: self.vertices.clone() }
    }

    pub fn h_rep(&self) -> &HPolytope {
        self.hrep.get_or_init(|| compute_hull(&self.vertices).expect("valid vertex list").hrep)
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.h_rep().halfspaces
    }

    /// `K − K`, computed once per body.
    pub fn difference_body(&self) -> &Body {
        self.difference.get_or_init(|| {
            let mut diffs = Vec::with_capacity(self.vertices.len() * self.vertices.len());
            for x in &self.vertices {
                for y in &self.vertices {
                    diffs.push(x - y);
                }
            }
            Box::new(Body::new(diffs).expect("differences of valid vertices"))
        })
    }

    /// Support value `h(K, a)` and all vertices attaining it.
    pub fn support(&self, a: &Vector) -> Result<(Scalar, Vec<Vector>), Error> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.dim() });
        }
        if a.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let value = self.support_value(a);
        let face = self.vertices.iter().filter(|v| a.dot(v) == value).cloned().collect();
        Ok((value, face))
    }

    /// `h(K, a)` without validation; zero directions give zero.
    pub fn support_value(&self, a: &Vector) -> Scalar {
        self.vertices.iter().map(|v| a.dot(v)).max().expect("nonempty body")
    }

    /// Vertices of the face exposed by `a`.
    pub fn face(&self, a: &Vector) -> Vec<Vector> {
        let value = self.support_value(a);
        self.vertices.iter().filter(|v| a.dot(v) == value).cloned().collect()
    }

    pub fn contains(&self, x: &Vector) -> bool {
        x.dim() == self.dim && self.h_rep().contains(x)
    }

    /// Every vertex of `other` lies in `self`.
    pub fn contains_body(&self, other: &Body) -> bool {
        other.dim == self.dim && other.vertices.iter().all(|v| self.contains(v))
    }

    pub fn translate(&self, t: &Vector) -> Body {
        let vertices = self.vertices.iter().map(|v| v + t).collect();
        let hrep = self.h_rep().map(|h| h.translate(t));
        Body::from_parts(vertices, self.affine_dim, hrep)
    }

    /// `ρK`; ρ may be negative or zero.
    pub fn scale(&self, rho: &Scalar) -> Body {
        if rho.is_zero() {
            return Body::point(Vector::zeros(self.dim)).expect("valid point");
        }
        let vertices = self.vertices.iter().map(|v| v.scale(rho)).collect();
        let hrep = self.h_rep().map(|h| h.scale(rho));
        Body::from_parts(vertices, self.affine_dim, hrep)
    }

    pub fn reflect(&self) -> Body {
        self.scale(&-Scalar::one())
    }

    /// Consistency of the two descriptions: every vertex satisfies all
    /// constraints and is tight on facets spanning the hull directions, and
    /// every facet is tight at some vertex.
    pub fn check_representations(&self) -> bool {
        let h = self.h_rep();
        let k = self.affine_dim;
        self.vertices.iter().all(|v| {
            if !h.contains(v) {
                return false;
            }
            let tight: Vec<Vector> = h.halfspaces.iter().filter(|f| f.is_tight(v)).map(|f| f.normal.clone()).collect();
            let mut all = tight;
            all.extend(h.equations.iter().map(|e| e.normal.clone()));
            rank(&all) == self.dim || k == 0
        }) && h.halfspaces.iter().all(|f| self.vertices.iter().any(|v| f.is_tight(v)))
    }

    /// Whether `−K` is a translate of `K`, i.e. `K` is centrally symmetric.
    pub fn is_centrally_symmetric(&self) -> bool {
        let c = Vector::barycenter(&self.vertices);
        let doubled = c.scale(&Scalar::from_integer(2.into()));
        let mut reflected: Vec<Vector> = self.vertices.iter().map(|v| &doubled - v).collect();
        reflected.sort();
        reflected == self.vertices
    }

    pub fn is_origin_symmetric(&self) -> bool {
        let mut reflected: Vec<Vector> = self.vertices.iter().map(|v| -v).collect();
        reflected.sort();
        reflected == self.vertices
    }

    /// Whether the body is an `n`-simplex in its ambient space.
    pub fn is_simplex(&self) -> bool {
        self.is_full_dimensional() && self.vertices.len() == self.dim + 1
    }

    /// The halfspace with smallest slack at `x`, useful for reporting.
    pub fn most_violated(&self, x: &Vector) -> Option<&Halfspace> {
        self.facets().iter().min_by(|a, b| a.slack(x).cmp(&b.slack(x)))
    }
}

impl PartialEq for Body {
    fn eq(&self, other: &Body) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Body {}
