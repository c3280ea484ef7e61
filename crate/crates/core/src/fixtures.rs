//! Bodies shared by unit tests, written out by hand.

use crate::kernel::{int, rat};
use crate::{Body, Vector};

pub fn v(c: &[i64]) -> Vector {
    Vector::from_i64(c)
}

pub fn q(c: &[(i64, i64)]) -> Vector {
    Vector::new(c.iter().map(|&(a, b)| rat(a, b)).collect())
}

pub fn cube(n: usize) -> Body {
    let pts = (0..(1u32 << n))
        .map(|m| Vector::new((0..n).map(|i| if m >> i & 1 == 1 { int(1) } else { int(-1) }).collect()))
        .collect();
    Body::new(pts).unwrap()
}

pub fn cross(n: usize) -> Body {
    let mut pts = Vec::new();
    for i in 0..n {
        pts.push(Vector::unit(n, i));
        pts.push(-Vector::unit(n, i));
    }
    Body::new(pts).unwrap()
}

/// Regular tetrahedron with centroid at the origin.
pub fn tetrahedron() -> Body {
    Body::from_i64(&[&[1, 1, 1], &[1, -1, -1], &[-1, 1, -1], &[-1, -1, 1]]).unwrap()
}

/// `conv{0, e1, e2}` translated so its centroid is the origin.
pub fn centered_triangle() -> Body {
    Body::new(vec![q(&[(-1, 3), (-1, 3)]), q(&[(2, 3), (-1, 3)]), q(&[(-1, 3), (2, 3)])]).unwrap()
}
