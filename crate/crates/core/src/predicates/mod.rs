//! Exact decisions and certificates for structural properties of a body
//! relative to a gauge.
//!
//! Arbitrary gauges are accepted. Where a notion is defined for symmetric
//! gauges only, `C` is replaced by `(C − C)/2`, which leaves diameter, width,
//! completeness and constant width unchanged.

mod simplex;
mod structure;

use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::kernel::{Scalar, Vector};
use crate::polytope::{body_from_hrep, equal_sets, minkowski_sum, Body, HPolytope, Halfspace};
use crate::radii::{circumradius, diameter, difference_gauge, inradius, width};
use crate::Error;

pub use simplex::{
    is_reduced_simplex, verify_asymcont, verify_leichtweiss, verify_tcomplete, AsymContReport, Incidence,
    LeichtweissReport, ReducedSimplexReport, TcompleteReport, TouchingFacet,
};
pub use structure::{
    complete_structure_check, reduced_necessary, ReducedNecessaryReport, StructureKind, StructureReport,
    VertexWidthReport,
};

/// `(C − C)/2`: the symmetric gauge with the same diameters and widths.
pub fn symmetral_half(c: &Body) -> Body {
    c.difference_body().scale(&Scalar::new(1.into(), 2.into()))
}

pub(crate) fn check_gauge(k: &Body, c: &Body) -> Result<(), Error> {
    if k.dim() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), found: k.dim() });
    }
    if !c.is_full_dimensional() {
        return Err(Error::DegenerateGauge);
    }
    Ok(())
}

/// Touching points `p^i ∈ K ∩ bd C` with outer normals `a^i` of common
/// supporting hyperplanes and convex weights balancing the normals.
#[derive(Clone, Debug, PartialEq)]
pub struct ContainmentCertificate {
    pub points: Vec<Vector>,
    pub normals: Vec<Vector>,
    /// `h(C, a^i)` for each normal.
    pub offsets: Vec<Scalar>,
    pub convex_coefficients: Vec<Scalar>,
}

impl ContainmentCertificate {
    pub fn m(&self) -> usize {
        self.points.len()
    }

    /// Exact check of every claim the certificate makes about `K ⊆ C`.
    pub fn verify(&self, k: &Body, c: &Body) -> bool {
        let n = k.dim();
        let m = self.points.len();
        if m < 2
            || m > n + 1
            || self.normals.len() != m
            || self.offsets.len() != m
            || self.convex_coefficients.len() != m
        {
            return false;
        }
        if self.convex_coefficients.iter().any(|l| l.is_negative()) {
            return false;
        }
        if self.convex_coefficients.iter().sum::<Scalar>() != Scalar::one() {
            return false;
        }
        let mut balance = Vector::zeros(n);
        for (a, l) in self.normals.iter().zip(&self.convex_coefficients) {
            balance = balance + a.scale(l);
        }
        if !balance.is_zero() {
            return false;
        }
        self.points.iter().zip(&self.normals).zip(&self.offsets).all(|((p, a), b)| {
            let value = a.dot(p);
            !a.is_zero()
                && k.contains(p)
                && c.contains(p)
                && value == *b
                && c.support_value(a) == value
                && k.support_value(a) == value
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Containment {
    Optimal(ContainmentCertificate),
    /// `K` fits in a translate of `factor · C` with `factor < 1`.
    NotOptimal {
        factor: Scalar,
    },
}

/// Decides `K ⊂opt C` and certifies optimality by touching points.
pub fn optimal_containment(k: &Body, c: &Body) -> Result<Containment, Error> {
    check_gauge(k, c)?;
    if !c.contains_body(k) {
        return Err(Error::NotContained);
    }
    let fit = circumradius(k, c)?;
    if fit.radius < Scalar::one() {
        return Ok(Containment::NotOptimal { factor: fit.radius });
    }
    // the dual weights are complementary to every optimal center, so with
    // R = 1 they describe touching at the identity placement too
    let mut cert =
        ContainmentCertificate { points: vec![], normals: vec![], offsets: vec![], convex_coefficients: vec![] };
    for t in fit.touching {
        cert.points.push(t.vertex);
        cert.normals.push(t.facet.normal);
        cert.offsets.push(t.facet.offset);
        cert.convex_coefficients.push(t.weight);
    }
    if !cert.verify(k, c) {
        return Err(Error::Internal("containment certificate failed verification".into()));
    }
    Ok(Containment::Optimal(cert))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantWidthReport {
    pub is_cw: bool,
    /// `D(K, C)/2`, the factor with `K − K = ρ(C − C)` when constant width.
    pub rho: Option<Scalar>,
    /// A facet normal of `K − K` whose breadth is below the diameter.
    pub failing_direction: Option<Vector>,
}

pub fn is_constant_width(k: &Body, c: &Body) -> Result<ConstantWidthReport, Error> {
    check_gauge(k, c)?;
    let d = diameter(k, c)?.value;
    let rho = &d / Scalar::from_integer(2.into());
    let target = c.difference_body().scale(&rho);
    if equal_sets(k.difference_body(), &target) {
        return Ok(ConstantWidthReport { is_cw: true, rho: Some(rho), failing_direction: None });
    }
    let w = width(k, c)?;
    debug_assert!(w.value < d);
    Ok(ConstantWidthReport { is_cw: false, rho: Some(rho), failing_direction: Some(w.direction) })
}

#[derive(Clone, Debug)]
pub struct Completeness {
    pub is_complete: bool,
    /// Lexicographically smallest vertex of the spherical hull outside `K`.
    pub witness: Option<Vector>,
    /// `⋂_{v ∈ ext K} (v + (D/2)(C − C))`, which always contains `K`.
    pub spherical_hull: Body,
    pub diameter: Scalar,
}

/// Spherical intersection test: `K` is complete iff it equals the
/// intersection of the diameter balls of `C − C` around its vertices.
pub fn is_complete(k: &Body, c: &Body) -> Result<Completeness, Error> {
    check_gauge(k, c)?;
    let d = diameter(k, c)?.value;
    let half = &d / Scalar::from_integer(2.into());
    // v + (D/2)(C − C) ⊆ {a·x ≤ a·v + (D/2)β}; the tightest over v uses −h(K, −a)
    let halfspaces = c
        .difference_body()
        .facets()
        .iter()
        .map(|f| Halfspace::new(f.normal.clone(), &half * &f.offset - k.support_value(&-&f.normal)))
        .collect();
    let hull = body_from_hrep(&HPolytope { dim: k.dim(), halfspaces, equations: vec![] })?;
    let witness = hull.vertices().iter().find(|v| !k.contains(v)).cloned();
    Ok(Completeness { is_complete: witness.is_none(), witness, spherical_hull: hull, diameter: d })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PseudoCompleteness {
    pub is_pseudo_complete: bool,
    pub diameter: Scalar,
    pub inradius: Scalar,
    pub circumradius: Scalar,
}

/// `D = r + R` with respect to the symmetric gauge `(C − C)/2`.
pub fn is_pseudo_complete(k: &Body, c: &Body) -> Result<PseudoCompleteness, Error> {
    check_gauge(k, c)?;
    let sym = symmetral_half(c);
    let d = diameter(k, &sym)?.value;
    let r = inradius(k, &sym)?.radius;
    let big = circumradius(k, &sym)?.radius;
    Ok(PseudoCompleteness { is_pseudo_complete: d == &r + &big, diameter: d, inradius: r, circumradius: big })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EndpointReport {
    pub vertex: Vector,
    pub is_endpoint: bool,
    /// Lexicographically smallest vertex `y` with `D([x, y], C) = D(K, C)`.
    pub partner: Option<Vector>,
}

/// For each vertex `x`, whether some `y ∈ K` makes `[x, y]` diametrical.
/// The gauge distance to `x` is convex, so `y` may be taken among vertices.
pub fn diametrical_endpoint_check(k: &Body, c: &Body) -> Result<Vec<EndpointReport>, Error> {
    check_gauge(k, c)?;
    let half = diameter(k, c)?.value / Scalar::from_integer(2.into());
    Ok(k.vertices()
        .iter()
        .map(|x| {
            let partner = k.vertices().iter().find(|y| difference_gauge(c, &(x - *y)) == half).cloned();
            EndpointReport { vertex: x.clone(), is_endpoint: partner.is_some(), partner }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearityPoint {
    pub lambda: Scalar,
    /// `w(λK + (1 − λ)K*, C)`.
    pub left: Scalar,
    /// `λ w(K, C) + (1 − λ) w(K*, C)`.
    pub right: Scalar,
}

impl LinearityPoint {
    pub fn excess(&self) -> Scalar {
        &self.left - &self.right
    }

    pub fn is_equal(&self) -> bool {
        self.left == self.right
    }
}

/// Checks that `kstar` is a completion of `k`.
pub fn check_completion(k: &Body, kstar: &Body, c: &Body) -> Result<(), Error> {
    check_gauge(k, c)?;
    if !kstar.contains_body(k) {
        return Err(Error::NotACompletion("K is not contained in K*".into()));
    }
    if diameter(k, c)?.value != diameter(kstar, c)?.value {
        return Err(Error::NotACompletion("diameters differ".into()));
    }
    if !is_complete(kstar, c)?.is_complete {
        return Err(Error::NotACompletion("K* is not complete".into()));
    }
    Ok(())
}

/// Compares the width of Minkowski combinations of `K` and a completion
/// with the linear interpolation of the widths. The left side never falls
/// below the right one.
pub fn width_linearity_probe(
    k: &Body,
    kstar: &Body,
    c: &Body,
    lambdas: &[Scalar],
) -> Result<Vec<LinearityPoint>, Error> {
    check_completion(k, kstar, c)?;
    if lambdas.iter().any(|l| l.is_negative() || *l > Scalar::one()) {
        return Err(Error::BadParams("λ must lie in [0, 1]".into()));
    }
    let wk = width(k, c)?.value;
    let ws = width(kstar, c)?.value;
    lambdas
        .par_iter()
        .map(|l| {
            let mix = minkowski_sum(&k.scale(l), &kstar.scale(&(Scalar::one() - l)))?;
            let left = width(&mix, c)?.value;
            let right = l * &wk + (Scalar::one() - l) * &ws;
            if left < right {
                return Err(Error::Internal("width fell below the interpolation".into()));
            }
            Ok(LinearityPoint { lambda: l.clone(), left, right })
        })
        .collect()
}

pub(crate) fn two() -> Scalar {
    Scalar::from_integer(2.into())
}
