//! Gauge-relative radii, diameter, width and Minkowski asymmetry.
//!
//! Every quantity is the exact optimum of a small linear program or a finite
//! maximum over vertices and facets. When optimizers are not unique the
//! lexicographically smallest one is returned.

use num_traits::{One, Signed, Zero};

use crate::kernel::lp::{lexmin_point, minimize_over, HalfspaceLp};
use crate::kernel::{Scalar, Vector};
use crate::polytope::{gauge_by_facets, Body, Halfspace};
use crate::Error;

/// A vertex of `K` lying on a facet of the enclosing homothet, with its
/// normalized dual weight.
#[derive(Clone, Debug, PartialEq)]
pub struct Touching {
    pub vertex: Vector,
    /// Facet of the gauge `C` (before scaling and translation).
    pub facet: Halfspace,
    pub weight: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circumradius {
    pub radius: Scalar,
    pub center: Vector,
    /// Positive dual weights summing to one; `Σ weight · facet.normal = 0`.
    /// Valid for every optimal center, not only the returned one.
    pub touching: Vec<Touching>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Inradius {
    pub radius: Scalar,
    pub center: Vector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diameter {
    pub value: Scalar,
    pub pair: (Vector, Vector),
    /// Facet normal of `C − C` exposing `pair.0 − pair.1`.
    pub direction: Vector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Width {
    pub value: Scalar,
    pub direction: Vector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadiiReport {
    pub circumradius: Scalar,
    pub inradius: Scalar,
    pub diameter: Scalar,
    pub width: Scalar,
    pub circumcenter: Vector,
    pub incenter: Vector,
    pub diameter_pair: (Vector, Vector),
    pub width_direction: Vector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymmetryReport {
    pub s: Scalar,
    pub minkowski_center: Vector,
    /// `c′` with `−K ⊂ c′ + sK`.
    pub translate_vector: Vector,
}

fn check_pair(k: &Body, c: &Body) -> Result<(), Error> {
    if k.dim() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), found: k.dim() });
    }
    if !c.is_full_dimensional() {
        return Err(Error::DegenerateGauge);
    }
    Ok(())
}

fn extend(v: &Vector, last: Scalar) -> Vector {
    let mut coords = v.coords().to_vec();
    coords.push(last);
    Vector::new(coords)
}

fn split(v: &Vector) -> (Vector, Scalar) {
    let n = v.dim() - 1;
    (Vector::new(v.coords()[..n].to_vec()), v[n].clone())
}

/// Lexicographically smallest `(c, λ)` after pinning `λ` to `value`.
fn lexmin_with_fixed_last(mut rows: Vec<Halfspace>, dim: usize, value: &Scalar) -> Result<Vector, Error> {
    let e = Vector::unit(dim + 1, dim);
    rows.push(Halfspace::new(e.clone(), value.clone()));
    rows.push(Halfspace::new(-e, -value.clone()));
    let p = lexmin_point(&rows, dim + 1)?.ok_or_else(|| Error::Internal("optimal face is empty".into()))?;
    Ok(split(&p).0)
}

/// `R(K, C)`: smallest `λ` such that a translate of `λC` contains `K`.
pub fn circumradius(k: &Body, c: &Body) -> Result<Circumradius, Error> {
    check_pair(k, c)?;
    let n = k.dim();
    // v_i − x ∈ λC  ⟺  −a_j·x − b_j λ ≤ −a_j·v_i  for every facet (a_j, b_j)
    let mut rows = Vec::new();
    let mut index = Vec::new();
    for (i, v) in k.vertices().iter().enumerate() {
        for (j, f) in c.facets().iter().enumerate() {
            rows.push(Halfspace::new(extend(&-&f.normal, -f.offset.clone()), -f.normal.dot(v)));
            index.push((i, j));
        }
    }
    rows.push(Halfspace::new(-Vector::unit(n + 1, n), Scalar::zero()));
    let HalfspaceLp::Optimal { value, multipliers, .. } = minimize_over(&Vector::unit(n + 1, n), &rows)? else {
        return Err(Error::Internal("circumradius program has no optimum".into()));
    };
    let total: Scalar = index.iter().enumerate().map(|(r, _)| multipliers[r].clone()).sum();
    let mut touching = Vec::new();
    if total.is_positive() {
        for (r, &(i, j)) in index.iter().enumerate() {
            if multipliers[r].is_positive() {
                touching.push(Touching {
                    vertex: k.vertices()[i].clone(),
                    facet: c.facets()[j].clone(),
                    weight: &multipliers[r] / &total,
                });
            }
        }
    }
    let center = lexmin_with_fixed_last(rows, n, &value)?;
    Ok(Circumradius { radius: value, center, touching })
}

/// `r(K, C)`: largest `λ` such that a translate of `λC` lies in `K`.
pub fn inradius(k: &Body, c: &Body) -> Result<Inradius, Error> {
    check_pair(k, c)?;
    let n = k.dim();
    // x + λC ⊆ K  ⟺  a·x + λ h(C, a) ≤ b  for every constraint (a, b) of K
    let mut rows: Vec<Halfspace> = k
        .h_rep()
        .all_halfspaces()
        .into_iter()
        .map(|f| Halfspace::new(extend(&f.normal, c.support_value(&f.normal)), f.offset))
        .collect();
    rows.push(Halfspace::new(-Vector::unit(n + 1, n), Scalar::zero()));
    let HalfspaceLp::Optimal { value, .. } = minimize_over(&-Vector::unit(n + 1, n), &rows)? else {
        return Err(Error::Internal("inradius program has no optimum".into()));
    };
    let radius = -value;
    let center = lexmin_with_fixed_last(rows, n, &radius)?;
    Ok(Inradius { radius, center })
}

/// `h(K − K, s)` without forming the difference body.
pub fn breadth_support(k: &Body, s: &Vector) -> Scalar {
    k.support_value(s) + k.support_value(&-s)
}

/// `b_s(K, C) = 2 h(K − K, s) / h(C − C, s)`.
pub fn breadth(k: &Body, c: &Body, s: &Vector) -> Result<Scalar, Error> {
    check_pair(k, c)?;
    if s.dim() != k.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: s.dim() });
    }
    if s.is_zero() {
        return Err(Error::ZeroDirection);
    }
    Ok(Scalar::from_integer(2.into()) * breadth_support(k, s) / breadth_support(c, s))
}

/// `D(K, C) = 2 max gauge_{C−C}(x − y)` over vertex pairs.
///
/// The maximum is read off the facets of `C − C`: a pair attains it exactly
/// when it is exposed by opposite faces of `K` along an attaining facet
/// normal, which also yields the lexicographically smallest pair.
pub fn diameter(k: &Body, c: &Body) -> Result<Diameter, Error> {
    check_pair(k, c)?;
    let two = Scalar::from_integer(2.into());
    let mut best: Option<(Scalar, (Vector, Vector), Vector)> = None;
    for f in c.difference_body().facets() {
        let ratio = breadth_support(k, &f.normal) / &f.offset;
        let better = match &best {
            None => true,
            Some((b, _, _)) => ratio > *b,
        };
        let tie = matches!(&best, Some((b, _, _)) if ratio == *b);
        if better || tie {
            let x = k.face(&f.normal).into_iter().min().expect("nonempty face");
            let y = k.face(&-&f.normal).into_iter().min().expect("nonempty face");
            if better || best.as_ref().is_some_and(|(_, p, _)| (&x, &y) < (&p.0, &p.1)) {
                best = Some((ratio, (x, y), f.normal.clone()));
            }
        }
    }
    let (ratio, pair, direction) = best.expect("a full-dimensional gauge has facets");
    Ok(Diameter { value: two * ratio, pair, direction })
}

/// Diameter through `2 max R([x, y], C)` over vertex pairs, one LP per pair.
/// Much slower than [`diameter`]; used to cross-check it.
pub fn diameter_by_segments(k: &Body, c: &Body) -> Result<Scalar, Error> {
    check_pair(k, c)?;
    let mut best = Scalar::zero();
    let vs = k.vertices();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let seg = Body::new(vec![vs[i].clone(), vs[j].clone()])?;
            let r = circumradius(&seg, c)?.radius;
            if r > best {
                best = r;
            }
        }
    }
    Ok(Scalar::from_integer(2.into()) * best)
}

/// `w(K, C)`: the smallest breadth, attained at a facet normal of `K − K`.
/// Bodies with empty interior have width zero along an equation normal.
pub fn width(k: &Body, c: &Body) -> Result<Width, Error> {
    check_pair(k, c)?;
    if !k.is_full_dimensional() {
        let direction = k.h_rep().equations[0].normal.clone();
        return Ok(Width { value: Scalar::zero(), direction });
    }
    let two = Scalar::from_integer(2.into());
    let mut best: Option<(Scalar, Vector)> = None;
    for f in k.difference_body().facets() {
        let b = &two * &f.offset / breadth_support(c, &f.normal);
        let replace = match &best {
            None => true,
            Some((v, d)) => b < *v || (b == *v && f.normal < *d),
        };
        if replace {
            best = Some((b, f.normal.clone()));
        }
    }
    let (value, direction) = best.expect("full-dimensional body has facets");
    Ok(Width { value, direction })
}

pub fn radii(k: &Body, c: &Body) -> Result<RadiiReport, Error> {
    let big = circumradius(k, c)?;
    let small = inradius(k, c)?;
    let d = diameter(k, c)?;
    let w = width(k, c)?;
    Ok(RadiiReport {
        circumradius: big.radius,
        inradius: small.radius,
        diameter: d.value,
        width: w.value,
        circumcenter: big.center,
        incenter: small.center,
        diameter_pair: d.pair,
        width_direction: w.direction,
    })
}

/// Minkowski asymmetry `s(K) = R(−K, K)` and the Minkowski center.
pub fn asymmetry(k: &Body) -> Result<AsymmetryReport, Error> {
    if !k.is_full_dimensional() {
        return Err(Error::DegenerateBody);
    }
    let fit = circumradius(&k.reflect(), k)?;
    let s = fit.radius;
    let translate_vector = fit.center;
    let minkowski_center = (-&translate_vector).scale(&(Scalar::one() / (&s + Scalar::one())));
    let shifted = k.translate(&-&minkowski_center);
    if !shifted.scale(&s).contains_body(&shifted.reflect()) {
        return Err(Error::Internal("Minkowski center relation failed".into()));
    }
    Ok(AsymmetryReport { s, minkowski_center, translate_vector })
}

/// Translate of `K` whose Minkowski center is the origin.
pub fn center_at_minkowski_center(k: &Body) -> Result<Body, Error> {
    let a = asymmetry(k)?;
    let mut out = k.translate(&-&a.minkowski_center);
    if let Some(name) = k.name() {
        out = out.with_name(name);
    }
    Ok(out)
}

/// `gauge_{C−C}(x)` for a full-dimensional gauge `C`.
pub fn difference_gauge(c: &Body, x: &Vector) -> Scalar {
    gauge_by_facets(c.difference_body(), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, rat};
    use crate::polytope::{central_symmetral, gauge_value, GaugeValue};

    fn cube(n: usize) -> Body {
        let pts = (0..(1u32 << n))
            .map(|m| Vector::new((0..n).map(|i| if m >> i & 1 == 1 { int(1) } else { int(-1) }).collect()))
            .collect();
        Body::new(pts).unwrap()
    }

    fn cross(n: usize) -> Body {
        let mut pts = Vec::new();
        for i in 0..n {
            pts.push(Vector::unit(n, i));
            pts.push(-Vector::unit(n, i));
        }
        Body::new(pts).unwrap()
    }

    fn centered_triangle() -> Body {
        Body::new(vec![
            Vector::new(vec![rat(-1, 3), rat(-1, 3)]),
            Vector::new(vec![rat(2, 3), rat(-1, 3)]),
            Vector::new(vec![rat(-1, 3), rat(2, 3)]),
        ])
        .unwrap()
    }

    fn tetrahedron() -> Body {
        Body::from_i64(&[&[1, 1, 1], &[1, -1, -1], &[-1, 1, -1], &[-1, -1, 1]]).unwrap()
    }

    /// Circumradius from the vertex description of the gauge: each vertex
    /// of `K` is `c + Σ μ_k d_k` with `Σ μ_k = λ`, `μ ≥ 0`.
    fn circumradius_oracle(k: &Body, c: &Body) -> Scalar {
        use crate::kernel::lp::{lp_solve, LpProblem};
        let n = k.dim();
        let m = c.num_vertices();
        let nk = k.num_vertices();
        // variables: c (free), λ, μ_{ik}
        let nv = n + 1 + nk * m;
        let mut obj = Vector::zeros(nv);
        obj[n] = int(1);
        let mut lp = LpProblem::minimize(obj);
        for j in n..nv {
            lp = lp.lower_bound(j, int(0));
        }
        for (i, v) in k.vertices().iter().enumerate() {
            for t in 0..n {
                let mut row = Vector::zeros(nv);
                row[t] = int(1);
                for (kk, d) in c.vertices().iter().enumerate() {
                    row[n + 1 + i * m + kk] = d[t].clone();
                }
                lp = lp.eq(row, v[t].clone());
            }
            let mut row = Vector::zeros(nv);
            row[n] = int(-1);
            for kk in 0..m {
                row[n + 1 + i * m + kk] = int(1);
            }
            lp = lp.eq(row, int(0));
        }
        lp_solve(&lp).unwrap().objective_value.unwrap()
    }

    fn width_oracle(k: &Body, c: &Body) -> Scalar {
        let kk = central_symmetral(k);
        let cc = central_symmetral(c);
        let mut best: Option<Scalar> = None;
        for d in cc.vertices() {
            let GaugeValue::Finite(g) = gauge_value(&kk, d).unwrap() else { panic!("interior origin") };
            let v = int(2) / g;
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
        best.unwrap()
    }

    #[test]
    fn circumradius_examples() {
        let c = cube(3);
        let r = circumradius(&c, &c).unwrap();
        assert_eq!((r.radius, r.center), (int(1), Vector::zeros(3)));
        let t = centered_triangle();
        let tt = central_symmetral(&t);
        assert_eq!(circumradius_oracle(&t, &tt), rat(2, 3));
        assert_eq!(circumradius(&t, &tt).unwrap().radius, rat(2, 3));
        let s = tetrahedron();
        let ss = central_symmetral(&s);
        assert_eq!(circumradius_oracle(&s, &ss), rat(3, 4));
        assert_eq!(circumradius(&s, &ss).unwrap().radius, rat(3, 4));
        let seg = Body::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        assert!(matches!(circumradius(&c, &seg), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(circumradius(&seg, &seg), Err(Error::DegenerateGauge)));
    }

    #[test]
    fn circumradius_certificate_balances() {
        let s = tetrahedron();
        let r = circumradius(&s, &cube(3)).unwrap();
        let mut sum = Vector::zeros(3);
        let mut total = Scalar::zero();
        for t in &r.touching {
            sum = sum + t.facet.normal.scale(&t.weight);
            total += &t.weight;
            let p = &t.vertex - &r.center;
            assert_eq!(t.facet.normal.dot(&p), &r.radius * &t.facet.offset);
        }
        assert_eq!((sum, total), (Vector::zeros(3), int(1)));
    }

    #[test]
    fn inradius_examples() {
        let c = cube(3);
        assert_eq!(inradius(&c, &c).unwrap().radius, int(1));
        let t = centered_triangle();
        assert_eq!(inradius(&t, &central_symmetral(&t)).unwrap().radius, rat(1, 3));
        assert_eq!(inradius(&c, &cross(3)).unwrap().radius, int(1));
        let seg = Body::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        assert_eq!(inradius(&seg, &cube(2)).unwrap().radius, int(0));
    }

    #[test]
    fn breadth_examples() {
        let seg = Body::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        let sq = cube(2);
        assert_eq!(breadth(&seg, &sq, &Vector::unit(2, 0)).unwrap(), int(1));
        assert_eq!(breadth(&seg, &sq, &Vector::unit(2, 1)).unwrap(), int(0));
        let s = Vector::from_i64(&[3, -2]);
        let t = centered_triangle();
        assert_eq!(breadth(&t, &sq, &s).unwrap(), breadth(&t, &sq, &s.scale(&int(2))).unwrap());
        assert!(matches!(breadth(&t, &sq, &Vector::zeros(2)), Err(Error::ZeroDirection)));
    }

    #[test]
    fn diameter_examples() {
        let c = cube(3);
        let d = diameter(&c, &c).unwrap();
        assert_eq!(d.value, int(2));
        assert_eq!(difference_gauge(&c, &(&d.pair.0 - &d.pair.1)), int(1));
        let t = centered_triangle();
        assert_eq!(diameter(&t, &central_symmetral(&t)).unwrap().value, int(1));
        assert_eq!(diameter_by_segments(&t, &central_symmetral(&t)).unwrap(), int(1));
        let seg = Body::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        let d = diameter(&seg, &cube(2)).unwrap();
        assert_eq!(d.value, int(1));
        assert_eq!(d.pair, (Vector::from_i64(&[0, 0]), Vector::from_i64(&[1, 0])));
        assert_eq!(diameter_by_segments(&seg, &cube(2)).unwrap(), int(1));
    }

    #[test]
    fn lexmin_diameter_pair() {
        // oracle: scan all ordered vertex pairs in lexicographic order
        for (k, c) in
            [(cube(2), cube(2)), (tetrahedron(), cube(3)), (cube(3), cross(3)), (centered_triangle(), cube(2))]
        {
            let d = diameter(&k, &c).unwrap();
            let mut best: Option<(Scalar, (Vector, Vector))> = None;
            for x in k.vertices() {
                for y in k.vertices() {
                    let g = difference_gauge(&c, &(x - y));
                    if best.as_ref().is_none_or(|(b, _)| g > *b) {
                        best = Some((g, (x.clone(), y.clone())));
                    }
                }
            }
            let (g, pair) = best.unwrap();
            assert_eq!(d.value, int(2) * g);
            assert_eq!(d.pair, pair);
        }
    }

    #[test]
    fn width_examples() {
        let c = cube(3);
        assert_eq!(width(&c, &c).unwrap().value, int(2));
        assert_eq!(width_oracle(&c, &c), int(2));
        let t = centered_triangle();
        let tt = central_symmetral(&t);
        assert_eq!(width_oracle(&t, &tt), int(1));
        let w = width(&t, &tt).unwrap();
        assert_eq!(w.value, int(1));
        assert_eq!(breadth(&t, &tt, &w.direction).unwrap(), int(1));
        let seg = Body::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        let w = width(&seg, &cube(2)).unwrap();
        assert_eq!(w.value, int(0));
        assert_eq!(w.direction, Vector::unit(2, 1));
        let s = tetrahedron();
        assert_eq!(width(&s, &cube(3)).unwrap().value, width_oracle(&s, &cube(3)));
    }

    #[test]
    fn asymmetry_examples() {
        let a = asymmetry(&cube(3)).unwrap();
        assert_eq!((a.s, a.minkowski_center), (int(1), Vector::zeros(3)));
        let t = Body::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let a = asymmetry(&t).unwrap();
        assert_eq!(a.s, int(2));
        assert_eq!(a.minkowski_center, Vector::new(vec![rat(1, 3), rat(1, 3)]));
        assert_eq!(asymmetry(&tetrahedron()).unwrap().s, int(3));
        let seg = Body::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        assert!(matches!(asymmetry(&seg), Err(Error::DegenerateBody)));
    }

    #[test]
    fn minkowski_centering() {
        assert_eq!(center_at_minkowski_center(&cube(3)).unwrap(), cube(3));
        let t = Body::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let once = center_at_minkowski_center(&t).unwrap();
        assert_eq!(once, centered_triangle());
        assert_eq!(center_at_minkowski_center(&once).unwrap(), once);
    }
}
