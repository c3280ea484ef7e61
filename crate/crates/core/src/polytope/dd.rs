//! Double description method for pointed polyhedral cones over the
//! integers.
//!
//! Given rows `r_i`, computes the extreme rays of `{y : r_i·y ≥ 0}`.
//! Adjacency of rays is decided combinatorially from zero sets, which is
//! exact for the minimal generating set maintained here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::kernel::linalg::{rref, Matrix};
use crate::kernel::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: Bits,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Divides out the gcd of the entries.
pub(crate) fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Scales a rational vector by a positive factor to a primitive integer vector.
pub(crate) fn integer_row(v: &[Scalar]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    primitive(v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect())
}

/// Extreme rays of the cone `{y ∈ R^d : row·y ≥ 0}` for all rows, as
/// primitive integer vectors. Returns `None` when the cone is not pointed
/// (the rows do not have rank `d`).
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], d: usize) -> Option<Vec<Vec<BigInt>>> {
    if d == 0 {
        return Some(Vec::new());
    }
    // greedy choice of d independent rows
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut echelon: Matrix = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(r.iter().map(|x| BigRational::from_integer(x.clone())).collect());
        let rank = rref(&mut trial);
        if rank.len() > echelon.len() {
            echelon = trial.into_iter().take(rank.len()).collect();
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    if chosen.len() < d {
        return None;
    }

    // initial simplicial cone: rays are the columns of the inverse
    let mut rays: Vec<Ray> = Vec::with_capacity(d);
    for k in 0..d {
        let mut m: Matrix = chosen
            .iter()
            .enumerate()
            .map(|(i, &ri)| {
                let mut row: Vec<Scalar> = rows[ri].iter().map(|x| BigRational::from_integer(x.clone())).collect();
                row.push(if i == k { Scalar::one() } else { Scalar::zero() });
                row
            })
            .collect();
        rref(&mut m);
        let col: Vec<Scalar> = m.iter().map(|r| r[d].clone()).collect();
        let mut zeros = Bits::new(rows.len());
        for (i, &ri) in chosen.iter().enumerate() {
            if i != k {
                zeros.set(ri);
            }
        }
        rays.push(Ray { coords: integer_row(&col), zeros });
    }

    let min_common = d.saturating_sub(2);
    for (idx, row) in rows.iter().enumerate() {
        if chosen.contains(&idx) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.set(idx);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() < min_common {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(i, r)| i == p || i == q || !common.is_subset_of(&r.zeros));
                if !adjacent {
                    continue;
                }
                let coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(xq, xp)| &values[p] * xq - &values[q] * xp)
                    .collect();
                let mut zeros = common;
                zeros.set(idx);
                created.push(Ray { coords: primitive(coords), zeros });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.zeros.set(idx);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }
    Some(rays.into_iter().map(|r| r.coords).collect())
}
