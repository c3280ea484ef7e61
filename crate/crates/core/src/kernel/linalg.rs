//! Dense exact linear algebra: row reduction, linear systems, affine hulls.

use num_traits::{One, Zero};

use super::scalar::Scalar;
use super::vector::Vector;
use crate::Error;

/// Row-major dense matrix of scalars.
pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form, in place. Returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vector]) -> usize {
    let mut m: Matrix = rows.iter().map(|v| v.0.clone()).collect();
    rref(&mut m).len()
}

/// Exact solution set of `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    pub particular: Vector,
    pub null_basis: Vec<Vector>,
}

/// Gaussian elimination. `None` means the system is inconsistent.
pub fn linear_solve(a: &[Vector], b: &Vector) -> Result<Option<LinearSolution>, Error> {
    if a.len() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.dim() });
    }
    let cols = a.first().map_or(0, Vector::dim);
    if let Some(bad) = a.iter().find(|r| r.dim() != cols) {
        return Err(Error::DimensionMismatch { expected: cols, found: bad.dim() });
    }
    let mut m: Matrix = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.0.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&cols) {
        return Ok(None);
    }
    let mut particular = Vector::zeros(cols);
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m[r][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let null_basis = free
        .iter()
        .map(|&f| {
            let mut v = Vector::zeros(cols);
            v[f] = Scalar::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect();
    Ok(Some(LinearSolution { particular, null_basis }))
}

/// Basis of `{x : v·x = 0 for all v in rows}` in a space of dimension `dim`.
pub fn null_space(rows: &[Vector], dim: usize) -> Vec<Vector> {
    if rows.is_empty() {
        return (0..dim).map(|i| Vector::unit(dim, i)).collect();
    }
    let zero = Vector::zeros(rows.len());
    linear_solve(rows, &zero).expect("consistent dimensions").expect("homogeneous systems are consistent").null_basis
}

/// Affine hull of a point set: base point, a row-reduced direction basis and
/// the dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineHull {
    pub base: Vector,
    /// Rows of a reduced row echelon form; `basis[j]` has a one in column
    /// `pivots[j]` and zeros in every other pivot column.
    pub basis: Vec<Vector>,
    pub pivots: Vec<usize>,
}

impl AffineHull {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x - base` in the hull basis, or `None` when `x` is not
    /// in the hull.
    pub fn coordinates(&self, x: &Vector) -> Option<Vector> {
        let coords = self.project(x);
        (&self.point(&coords) == x).then_some(coords)
    }

    /// Coordinates of the point of the hull agreeing with `x` on the pivot
    /// columns. Equals [`AffineHull::coordinates`] for points of the hull.
    pub fn project(&self, x: &Vector) -> Vector {
        Vector::new(self.pivots.iter().map(|&p| &x[p] - &self.base[p]).collect())
    }

    pub fn point(&self, coords: &Vector) -> Vector {
        let mut p = self.base.clone();
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                p = &p + &b.scale(c);
            }
        }
        p
    }
}

pub fn affine_hull(points: &[Vector]) -> Result<AffineHull, Error> {
    let base = points.first().ok_or(Error::EmptyInput)?.clone();
    let mut m: Matrix = points[1..].iter().map(|p| (p - &base).0).collect();
    let pivots = rref(&mut m);
    let basis = m.into_iter().take(pivots.len()).map(Vector::new).collect();
    Ok(AffineHull { base, basis, pivots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::{int, rat};

    fn v(c: &[i64]) -> Vector {
        Vector::from_i64(c)
    }

    #[test]
    fn identity_system() {
        let a = vec![v(&[1, 0]), v(&[0, 1])];
        let s = linear_solve(&a, &v(&[3, -4])).unwrap().unwrap();
        assert_eq!(s.particular, v(&[3, -4]));
        assert!(s.null_basis.is_empty());
    }

    #[test]
    fn single_equation() {
        let s = linear_solve(&[v(&[1, 1])], &v(&[2])).unwrap().unwrap();
        assert_eq!(s.particular, v(&[2, 0]));
        assert_eq!(s.null_basis, vec![v(&[-1, 1])]);
    }

    #[test]
    fn inconsistent_system() {
        assert!(linear_solve(&[v(&[1, 0]), v(&[1, 0])], &v(&[1, 2])).unwrap().is_none());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(linear_solve(&[v(&[1, 0])], &v(&[1, 2])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn returned_solution_satisfies_system() {
        let a = vec![Vector::new(vec![rat(1, 2), int(3), int(-1)]), Vector::new(vec![int(2), rat(-1, 3), int(0)])];
        let b = Vector::new(vec![int(1), rat(5, 7)]);
        let s = linear_solve(&a, &b).unwrap().unwrap();
        for (row, rhs) in a.iter().zip(b.iter()) {
            assert_eq!(&row.dot(&s.particular), rhs);
            for n in &s.null_basis {
                assert!(row.dot(n).is_zero());
            }
        }
    }

    #[test]
    fn affine_hull_examples() {
        assert_eq!(affine_hull(&[v(&[0, 0])]).unwrap().dim(), 0);
        let h = affine_hull(&[v(&[0, 0]), v(&[1, 0]), v(&[2, 0])]).unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(h.basis, vec![v(&[1, 0])]);
        let tri = affine_hull(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(tri.dim(), 2);
        assert!(matches!(affine_hull(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn hull_coordinates_round_trip() {
        let h = affine_hull(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let p = Vector::new(vec![rat(1, 3), rat(1, 3), rat(1, 3)]);
        let c = h.coordinates(&p).unwrap();
        assert_eq!(h.point(&c), p);
        assert!(h.coordinates(&v(&[0, 0, 0])).is_none());
    }
}
