//! Structure of reduced and complete polytopes relative to a polytopal gauge.

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{check_gauge, is_complete, two};
use crate::kernel::lp::{feasible_point, lexmin_point};
use crate::kernel::{Scalar, Vector};
use crate::polytope::{equal_sets, gauge_by_facets, vertices_of, Body, HPolytope, Halfspace};
use crate::radii::{breadth, diameter, width};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Complete,
    Reduced,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    pub kind: StructureKind,
    pub passes: bool,
    /// Reduced: midpoints `c^i` of width-attaining segments parallel to the
    /// vertex `q^i` of `(C − C)/2`. Complete: slab centers `d^j`, one per
    /// facet `j` of `C − C`.
    pub anchors: Vec<(Vector, usize)>,
    /// Directions attaining the width (reduced) or the diameter (complete).
    pub attained_directions: Vec<Vector>,
    /// Offending vertices of the scaled gauge (reduced) or facet normals of
    /// the body (complete).
    pub failures: Vec<Vector>,
    /// Complete only: the slabs around the anchors rebuild the body.
    pub slabs_rebuild_body: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexWidthReport {
    pub vertex: Vector,
    /// A vertex `y` such that `[x, y]` spans a width-attaining slab.
    pub partner: Option<Vector>,
    pub direction: Option<Vector>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedNecessaryReport {
    /// Passing is necessary for reducedness, not sufficient.
    pub passes: bool,
    pub width: Scalar,
    pub vertices: Vec<VertexWidthReport>,
    pub structure: StructureReport,
}

/// Searches a direction `s` in which `x` and another vertex span a slab of
/// minimal breadth touching the scaled gauge vertex `half_w · d`.
fn width_slab_through(k: &Body, x: &Vector, d: &Vector, half_w: &Scalar) -> Result<Option<Vector>, Error> {
    let shifted = x - &d.scale(half_w);
    let mut rows = Vec::with_capacity(2 * k.num_vertices() + 2);
    for v in k.vertices() {
        // x maximizes s over K and x − (w/2)d lies below its minimum
        rows.push(Halfspace::new(v - x, Scalar::zero()));
        rows.push(Halfspace::new(&shifted - v, Scalar::zero()));
    }
    rows.push(Halfspace::new(d.clone(), Scalar::one()));
    rows.push(Halfspace::new(-d, -Scalar::one()));
    feasible_point(&rows, k.dim())
}

/// Necessary conditions for `K` to be reduced with respect to `C`: every
/// vertex is the endpoint of a width-attaining segment, and every vertex of
/// `w(K, C)(C − C)/2` lies on the boundary of `K − K`.
pub fn reduced_necessary(k: &Body, c: &Body) -> Result<ReducedNecessaryReport, Error> {
    check_gauge(k, c)?;
    let w = width(k, c)?.value;
    let cc = c.difference_body();
    if !k.is_full_dimensional() {
        // every subset of a flat body has width zero; only points are reduced
        let passes = k.num_vertices() == 1;
        let structure = StructureReport {
            kind: StructureKind::Reduced,
            passes,
            anchors: vec![],
            attained_directions: vec![],
            failures: vec![],
            slabs_rebuild_body: false,
        };
        let vertices = k
            .vertices()
            .iter()
            .map(|x| VertexWidthReport { vertex: x.clone(), partner: passes.then(|| x.clone()), direction: None })
            .collect();
        return Ok(ReducedNecessaryReport { passes, width: w, vertices, structure });
    }
    let half_w = &w / two();
    let kk = k.difference_body();
    let touching: Vec<&Vector> =
        cc.vertices().iter().filter(|d| gauge_by_facets(kk, &d.scale(&half_w)) == Scalar::one()).collect();
    let failures: Vec<Vector> =
        cc.vertices().iter().filter(|d| !touching.contains(d)).map(|d| d.scale(&half_w)).collect();

    let vertices = k
        .vertices()
        .par_iter()
        .map(|x| {
            for d in &touching {
                if let Some(s) = width_slab_through(k, x, d, &half_w)? {
                    let partner = k.face(&-&s).into_iter().min();
                    return Ok(VertexWidthReport { vertex: x.clone(), partner, direction: Some(s) });
                }
            }
            Ok(VertexWidthReport { vertex: x.clone(), partner: None, direction: None })
        })
        .collect::<Result<Vec<_>, Error>>()?;

    let structure = reduced_structure(k, c, &w, &touching, failures)?;
    let passes = structure.passes && vertices.iter().all(|v| v.partner.is_some());
    Ok(ReducedNecessaryReport { passes, width: w, vertices, structure })
}

/// For each touching gauge vertex `q = d/2`, a segment `c + (w/2)[−q, q]` in
/// `K` and a direction in which it attains the width.
fn reduced_structure(
    k: &Body,
    c: &Body,
    w: &Scalar,
    touching: &[&Vector],
    failures: Vec<Vector>,
) -> Result<StructureReport, Error> {
    let n = k.dim();
    let half_w = w / two();
    let kk = k.difference_body();
    let mut anchors = Vec::new();
    let mut attained_directions = Vec::new();
    for (i, d) in c.difference_body().vertices().iter().enumerate() {
        if !touching.contains(&d) {
            continue;
        }
        let chord = d.scale(&half_w);
        // x ∈ K and x − chord ∈ K
        let mut rows: Vec<Halfspace> = k.h_rep().all_halfspaces();
        rows.extend(k.h_rep().all_halfspaces().into_iter().map(|f| f.translate(&chord)));
        let x = lexmin_point(&rows, n)?.ok_or_else(|| Error::Internal("touching chord does not fit".into()))?;
        let center = &x - &chord.scale(&Scalar::new(1.into(), 2.into()));
        let mut cone: Vec<Halfspace> =
            kk.vertices().iter().map(|z| Halfspace::new(z - &chord, Scalar::zero())).collect();
        cone.push(Halfspace::new(d.clone(), Scalar::one()));
        cone.push(Halfspace::new(-d, -Scalar::one()));
        let s = feasible_point(&cone, n)?.ok_or_else(|| Error::Internal("no supporting direction".into()))?;
        let segment = Body::new(vec![x.clone(), &x - &chord])?;
        if breadth(&segment, c, &s)? != *w || breadth(k, c, &s)? != *w {
            return Err(Error::Internal("chord does not attain the width".into()));
        }
        anchors.push((center, i));
        attained_directions.push(s);
    }
    Ok(StructureReport {
        kind: StructureKind::Reduced,
        passes: failures.is_empty(),
        anchors,
        attained_directions,
        failures,
        slabs_rebuild_body: false,
    })
}

/// For complete `K`: every facet normal of `K` is a facet normal of `C − C`
/// attaining the diameter, and `K` is the intersection of the slabs
/// `{x : |a_j·(x − d^j)| ≤ (D/4) h(C − C, a_j)}` over the facets of `C − C`.
pub fn complete_structure_check(k: &Body, c: &Body) -> Result<StructureReport, Error> {
    check_gauge(k, c)?;
    if !is_complete(k, c)?.is_complete {
        return Err(Error::NotComplete);
    }
    let d = diameter(k, c)?.value;
    let cc = c.difference_body();
    let mut failures = Vec::new();
    let mut attained_directions = Vec::new();
    for f in k.facets() {
        let in_gauge = cc.facets().iter().any(|g| g.normal == f.normal);
        if in_gauge && breadth(k, c, &f.normal)? == d {
            attained_directions.push(f.normal.clone());
        } else {
            failures.push(f.normal.clone());
        }
    }
    let quarter = &d / Scalar::from_integer(4.into());
    let mut anchors = Vec::new();
    let mut slabs = Vec::new();
    for (j, g) in cc.facets().iter().enumerate() {
        let half_width = &quarter * &g.offset;
        let t = k.support_value(&g.normal) - &half_width;
        let anchor = g.normal.scale(&(&t / g.normal.dot(&g.normal)));
        slabs.push(Halfspace::new(g.normal.clone(), &t + &half_width));
        slabs.push(Halfspace::new(-&g.normal, &half_width - &t));
        anchors.push((anchor, j));
    }
    let rebuilt = Body::new(vertices_of(&HPolytope { dim: k.dim(), halfspaces: slabs, equations: vec![] })?.vertices)?;
    let slabs_rebuild_body = equal_sets(&rebuilt, k);
    Ok(StructureReport {
        kind: StructureKind::Complete,
        passes: failures.is_empty() && slabs_rebuild_body,
        anchors,
        attained_directions,
        failures,
        slabs_rebuild_body,
    })
}
