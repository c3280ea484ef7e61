//! OFF export. Each body contributes its own vertices and faces; a comment
//! line `# body k: name vertices a..b faces c..d` precedes the data. Planar
//! bodies are placed in `z = 0` as a single face.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::kernel::{to_decimal, Scalar, Vector};
use crate::polytope::Body;
use crate::Error;

/// Sorts `pts` counterclockwise around their barycenter, seen from the side
/// `normal` points to. `normal` is `None` in the plane.
fn ccw_order(pts: &[Vector], normal: Option<&Vector>) -> Vec<usize> {
    let g = Vector::barycenter(pts);
    let u = &pts[0] - &g;
    let w = match normal {
        Some(a) => cross_product(a, &u),
        None => Vector::new(vec![-u[1].clone(), u[0].clone()]),
    };
    let coords: Vec<(Scalar, Scalar)> = pts
        .iter()
        .map(|p| {
            let d = p - &g;
            (d.dot(&u), d.dot(&w))
        })
        .collect();
    // exact angular order: upper half-plane first, then by orientation
    let half = |(x, y): &(Scalar, Scalar)| y.is_negative() || (y.is_zero() && x.is_negative());
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| {
        let (a, b) = (&coords[i], &coords[j]);
        match half(a).cmp(&half(b)) {
            Ordering::Equal => {
                let turn = &a.0 * &b.1 - &a.1 * &b.0;
                Scalar::zero().cmp(&turn)
            }
            o => o,
        }
    });
    idx
}

fn cross_product(a: &Vector, b: &Vector) -> Vector {
    Vector::new(vec![&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]])
}

/// Faces of a 2D or 3D body as counterclockwise vertex index lists.
pub fn faces(b: &Body) -> Result<Vec<Vec<usize>>, Error> {
    let vs = b.vertices();
    match b.dim() {
        2 => Ok(vec![ccw_order(vs, None)]),
        3 => {
            let mut out = Vec::new();
            for f in b.facets() {
                let on: Vec<usize> = (0..vs.len()).filter(|&i| f.is_tight(&vs[i])).collect();
                let pts: Vec<Vector> = on.iter().map(|&i| vs[i].clone()).collect();
                out.push(ccw_order(&pts, Some(&f.normal)).into_iter().map(|k| on[k]).collect());
            }
            Ok(out)
        }
        n => Err(Error::DimensionUnsupported(n)),
    }
}

/// Renders bodies as one OFF document with per-body comment headers.
pub fn to_off(bodies: &[Body], precision: usize) -> Result<String, Error> {
    let mut all_faces = Vec::new();
    for b in bodies {
        if b.dim() == 2 && !b.is_full_dimensional() || b.dim() == 3 && !b.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        all_faces.push(faces(b)?);
    }
    let nv: usize = bodies.iter().map(Body::num_vertices).sum();
    let nf: usize = all_faces.iter().map(Vec::len).sum();
    let mut out = String::from("OFF\n");
    writeln!(out, "# {} bodies, exact coordinates rounded to {precision} decimals", bodies.len()).unwrap();
    writeln!(out, "{nv} {nf} 0").unwrap();
    let (mut v0, mut f0) = (0, 0);
    for (k, (b, fs)) in bodies.iter().zip(&all_faces).enumerate() {
        writeln!(
            out,
            "# body {k}: {} vertices {}..{} faces {}..{}",
            b.name().unwrap_or("unnamed"),
            v0,
            v0 + b.num_vertices(),
            f0,
            f0 + fs.len()
        )
        .unwrap();
        for p in b.vertices() {
            let mut cs: Vec<String> = p.iter().map(|x| to_decimal(x, precision)).collect();
            if b.dim() == 2 {
                cs.push(to_decimal(&Scalar::zero(), precision));
            }
            writeln!(out, "{}", cs.join(" ")).unwrap();
        }
        v0 += b.num_vertices();
        f0 += fs.len();
    }
    let mut base = 0;
    for (b, fs) in bodies.iter().zip(&all_faces) {
        for f in fs {
            let ids: Vec<String> = f.iter().map(|i| (i + base).to_string()).collect();
            writeln!(out, "{} {}", f.len(), ids.join(" ")).unwrap();
        }
        base += b.num_vertices();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cross, cube};
    use crate::kernel::int;

    fn orientation_ok(b: &Body) -> bool {
        let vs = b.vertices();
        faces(b).unwrap().iter().zip(b.facets()).all(|(f, h)| {
            // consecutive triples turn counterclockwise about the outer normal
            (0..f.len()).all(|i| {
                let (p, q, r) = (&vs[f[i]], &vs[f[(i + 1) % f.len()]], &vs[f[(i + 2) % f.len()]]);
                cross_product(&(q - p), &(r - q)).dot(&h.normal) > int(0)
            })
        })
    }

    #[test]
    fn faces_are_counterclockwise() {
        for b in [cube(3), cross(3), crate::fixtures::tetrahedron().difference_body().clone()] {
            assert!(orientation_ok(&b));
            let fs = faces(&b).unwrap();
            // Euler: V − E + F = 2
            let edges: usize = fs.iter().map(Vec::len).sum::<usize>() / 2;
            assert_eq!(b.num_vertices() + fs.len(), edges + 2);
        }
    }

    #[test]
    fn planar_body_lies_in_z0() {
        let off = to_off(&[cube(2).with_name("square")], 3).unwrap();
        let lines: Vec<&str> = off.lines().collect();
        assert_eq!(lines[0], "OFF");
        assert_eq!(lines[2], "4 1 0");
        assert_eq!(lines[3], "# body 0: square vertices 0..4 faces 0..1");
        assert!(lines[4..8].iter().all(|l| l.ends_with(" 0.000")));
        assert_eq!(lines[8], "4 0 2 3 1");
    }

    #[test]
    fn four_dimensional_bodies_are_rejected() {
        assert!(matches!(to_off(&[cube(4)], 6), Err(Error::DimensionUnsupported(4))));
    }
}
