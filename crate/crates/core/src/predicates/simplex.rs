//! Simplex criteria and the asymmetry containment chain.

use num_traits::One;

use super::{check_gauge, is_complete, optimal_containment, symmetral_half, Containment, ContainmentCertificate};
use crate::kernel::{Scalar, Vector};
use crate::polytope::{conv_union, intersect_bodies, Body, Halfspace};
use crate::radii::{asymmetry, circumradius, diameter, inradius, width};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct TouchingFacet {
    /// Outer normal of `±S`, which is also a facet normal of `S − S`.
    pub normal: Vector,
    pub touches: bool,
    /// A vertex of the scaled gauge on that facet.
    pub point: Option<Vector>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedSimplexReport {
    pub is_reduced: bool,
    /// `w(S, C − C)`; the scaled gauge is `width · (C − C)`.
    pub width: Scalar,
    pub contained: bool,
    pub touching: Vec<TouchingFacet>,
}

/// A simplex is reduced iff the width-scaled gauge inside `S − S` touches
/// every facet of `S − S` parallel to a facet of `±S`.
pub fn is_reduced_simplex(s: &Body, c: &Body) -> Result<ReducedSimplexReport, Error> {
    check_gauge(s, c)?;
    if !s.is_simplex() {
        return Err(Error::NotASimplex);
    }
    let cc = c.difference_body();
    let w = width(s, cc)?.value;
    let scaled = cc.scale(&w);
    let ss = s.difference_body();
    let contained = ss.contains_body(&scaled);
    let mut touching = Vec::new();
    for f in s.facets() {
        for normal in [f.normal.clone(), -&f.normal] {
            let (value, face) = scaled.support(&normal)?;
            let touches = value == ss.support_value(&normal);
            let point = touches.then(|| face.into_iter().min().expect("nonempty face"));
            touching.push(TouchingFacet { normal, touches, point });
        }
    }
    let is_reduced = contained && touching.iter().all(|t| t.touches);
    Ok(ReducedSimplexReport { is_reduced, width: w, contained, touching })
}

fn centered_simplex(s: &Body, c: &Body) -> Result<(Body, Vector, Body), Error> {
    check_gauge(s, c)?;
    if !s.is_simplex() {
        return Err(Error::NotASimplex);
    }
    let a = asymmetry(s)?;
    Ok((s.translate(&-&a.minkowski_center), a.minkowski_center, symmetral_half(c)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TcompleteReport {
    /// `D = r + R`.
    pub pseudo_complete: bool,
    /// `S − S ⊆ D C ⊆ (n + 1)(S ∩ −S)`.
    pub sandwich: bool,
    pub complete: bool,
    /// `R/D = n/(n + 1)`.
    pub ratio: bool,
    pub agreement: bool,
    /// Translation applied to put the Minkowski center at the origin.
    pub translation: Vector,
    pub diameter: Scalar,
    pub inradius: Scalar,
    pub circumradius: Scalar,
}

impl TcompleteReport {
    pub fn conditions(&self) -> [bool; 4] {
        [self.pseudo_complete, self.sandwich, self.complete, self.ratio]
    }
}

/// Evaluates the four equivalent completeness conditions for a simplex
/// against the symmetric gauge `(C − C)/2`.
pub fn verify_tcomplete(s: &Body, c: &Body) -> Result<TcompleteReport, Error> {
    let (s0, translation, sym) = centered_simplex(s, c)?;
    let n = Scalar::from_integer((s.dim() as i64).into());
    let d = diameter(&s0, &sym)?.value;
    let r = inradius(&s0, &sym)?.radius;
    let big = circumradius(&s0, &sym)?.radius;
    let pseudo_complete = d == &r + &big;
    let scaled = sym.scale(&d);
    let core = intersect_bodies(&s0, &s0.reflect())?.ok_or_else(|| Error::Internal("S ∩ −S is empty".into()))?;
    let outer = core.scale(&(&n + Scalar::one()));
    let sandwich = scaled.contains_body(s0.difference_body()) && outer.contains_body(&scaled);
    let complete = is_complete(&s0, &sym)?.is_complete;
    let ratio = &big / &d == &n / (&n + Scalar::one());
    let agreement = pseudo_complete == sandwich && sandwich == complete && complete == ratio;
    Ok(TcompleteReport {
        pseudo_complete,
        sandwich,
        complete,
        ratio,
        agreement,
        translation,
        diameter: d,
        inradius: r,
        circumradius: big,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeichtweissReport {
    /// `w/r = n + 1`.
    pub ratio: bool,
    /// `(1 + 1/n) conv(S ∪ −S) ⊆ w C ⊆ S − S` with the prescribed touching.
    pub sandwich: bool,
    pub agreement: bool,
    pub translation: Vector,
    pub width: Scalar,
    pub inradius: Scalar,
}

/// Evaluates the two equivalent width conditions for a simplex against the
/// symmetric gauge `(C − C)/2`.
pub fn verify_leichtweiss(s: &Body, c: &Body) -> Result<LeichtweissReport, Error> {
    let (s0, translation, sym) = centered_simplex(s, c)?;
    let n = Scalar::from_integer((s.dim() as i64).into());
    let w = width(&s0, &sym)?.value;
    let r = inradius(&s0, &sym)?.radius;
    let ratio = &w / &r == &n + Scalar::one();
    let factor = Scalar::one() + Scalar::one() / &n;
    let inner = conv_union(&s0, &s0.reflect())?.scale(&factor);
    let middle = sym.scale(&w);
    let ss = s0.difference_body();
    let mut sandwich = middle.contains_body(&inner) && ss.contains_body(&middle);
    // the vertex ±(1 + 1/n)p_i meets the facet of S − S with normal ∓a_i,
    // where a_i is the normal of the facet opposite p_i
    for p in s0.vertices() {
        let f = s0.facets().iter().find(|f| !f.is_tight(p)).expect("simplex facet opposite a vertex");
        for sign in [Scalar::one(), -Scalar::one()] {
            let q = p.scale(&(&sign * &factor));
            let normal = f.normal.scale(&-&sign);
            sandwich &= normal.dot(&q) == ss.support_value(&normal) && middle.contains(&q);
        }
    }
    Ok(LeichtweissReport { ratio, sandwich, agreement: ratio == sandwich, translation, width: w, inradius: r })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Incidence {
    /// `±(1 + 1/s) p^i`.
    pub point: Vector,
    /// Outer normal `∓a^i`.
    pub normal: Vector,
    pub vertex_of_inner: bool,
    pub on_facet_of_middle: bool,
    pub facet_in_outer: bool,
}

impl Incidence {
    pub fn holds(&self) -> bool {
        self.vertex_of_inner && self.on_facet_of_middle && self.facet_in_outer
    }
}

#[derive(Clone, Debug)]
pub struct AsymContReport {
    pub asymmetry: Scalar,
    pub translation: Vector,
    /// `(1 + 1/s) conv(P ∪ −P)`.
    pub inner: Body,
    /// `P − P`.
    pub middle: Body,
    /// `(s + 1)(P ∩ −P)`.
    pub outer: Body,
    pub inner_in_middle: bool,
    pub middle_in_outer: bool,
    pub inner_certificate: Option<ContainmentCertificate>,
    pub outer_certificate: Option<ContainmentCertificate>,
    /// Vertices `p^i` and facet normals `a^i` of `P` with `−p^i ∈ s F_i`.
    pub touching: Vec<(Vector, Vector, Scalar)>,
    pub incidences: Vec<Incidence>,
    pub passes: bool,
}

fn has_facet(body: &Body, normal: &Vector, point: &Vector) -> bool {
    let h = Halfspace::new(normal.clone(), normal.dot(point)).canonical();
    body.facets().binary_search(&h).is_ok()
}

/// Verifies the containment chain
/// `(1 + 1/s) conv(P ∪ −P) ⊂opt P − P ⊂opt (s + 1)(P ∩ −P)`
/// and the facet incidences along it, after Minkowski-centering `P`.
pub fn verify_asymcont(p: &Body) -> Result<AsymContReport, Error> {
    let a = asymmetry(p)?;
    let s = a.s;
    let p0 = p.translate(&-&a.minkowski_center);
    let neg = p0.reflect();
    let inner = conv_union(&p0, &neg)?.scale(&(Scalar::one() + Scalar::one() / &s));
    let middle = p0.difference_body().clone();
    let core = intersect_bodies(&p0, &neg)?.ok_or_else(|| Error::Internal("P ∩ −P is empty".into()))?;
    let outer = core.scale(&(&s + Scalar::one()));
    let inner_in_middle = middle.contains_body(&inner);
    let middle_in_outer = outer.contains_body(&middle);
    let certificate = |k: &Body, c: &Body, ok: bool| -> Result<Option<ContainmentCertificate>, Error> {
        if !ok {
            return Ok(None);
        }
        Ok(match optimal_containment(k, c)? {
            Containment::Optimal(cert) => Some(cert),
            Containment::NotOptimal { .. } => None,
        })
    };
    let inner_certificate = certificate(&inner, &middle, inner_in_middle)?;
    let outer_certificate = certificate(&middle, &outer, middle_in_outer)?;

    let fit = circumradius(&neg, &p0)?;
    let factor = Scalar::one() + Scalar::one() / &s;
    let mut touching = Vec::new();
    let mut incidences = Vec::new();
    let mut balance = Vector::zeros(p.dim());
    for t in &fit.touching {
        let vertex = -&t.vertex;
        let normal = t.facet.normal.clone();
        balance = balance + normal.scale(&t.weight);
        for sign in [Scalar::one(), -Scalar::one()] {
            let point = vertex.scale(&(&sign * &factor));
            let outward = normal.scale(&-&sign);
            incidences.push(Incidence {
                vertex_of_inner: inner.vertices().binary_search(&point).is_ok(),
                on_facet_of_middle: has_facet(&middle, &outward, &point),
                facet_in_outer: has_facet(&outer, &outward, &point),
                point,
                normal: outward,
            });
        }
        touching.push((vertex, normal, t.weight.clone()));
    }
    let passes = inner_in_middle
        && middle_in_outer
        && inner_certificate.is_some()
        && outer_certificate.is_some()
        && touching.len() >= 2
        && balance.is_zero()
        && incidences.iter().all(Incidence::holds);
    Ok(AsymContReport {
        asymmetry: s,
        translation: a.minkowski_center,
        inner,
        middle,
        outer,
        inner_in_middle,
        middle_in_outer,
        inner_certificate,
        outer_certificate,
        touching,
        incidences,
        passes,
    })
}
