//! Named and seeded random bodies with exact rational coordinates.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kernel::{Scalar, Vector};
use crate::polytope::{Body, MAX_DIM};
use crate::Error;

/// Bumped whenever the output of a seeded generator changes.
pub const GENERATOR_VERSION: u32 = 1;

const DENOMINATOR: i64 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Regular when `n + 1` is a power of two (Hadamard rows); otherwise the
    /// centered standard simplex.
    RegularSimplex,
    /// `conv{0, e1, …, en}` translated so its centroid is the origin.
    CenteredSimplex,
    Cube,
    CrossPolytope,
    /// `conv((S × {0}) ∪ {±e_n})` for the centered `(n−1)`-simplex `S`.
    DoublePyramid,
    /// Hull of `vertices` random points, retried until full-dimensional.
    RandomPolytope {
        vertices: usize,
    },
    /// Hull of `pairs` random points and their negatives.
    RandomSymmetric {
        pairs: usize,
    },
}

impl GeneratorKind {
    pub fn parse(name: &str, count: usize) -> Result<GeneratorKind, Error> {
        Ok(match name {
            "regular_simplex" => GeneratorKind::RegularSimplex,
            "centered_simplex" => GeneratorKind::CenteredSimplex,
            "cube" => GeneratorKind::Cube,
            "cross_polytope" => GeneratorKind::CrossPolytope,
            "double_pyramid" => GeneratorKind::DoublePyramid,
            "random_polytope" => GeneratorKind::RandomPolytope { vertices: count },
            "random_symmetric" => GeneratorKind::RandomSymmetric { pairs: count },
            other => return Err(Error::BadParams(format!("unknown body kind {other}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::RegularSimplex => "regular_simplex",
            GeneratorKind::CenteredSimplex => "centered_simplex",
            GeneratorKind::Cube => "cube",
            GeneratorKind::CrossPolytope => "cross_polytope",
            GeneratorKind::DoublePyramid => "double_pyramid",
            GeneratorKind::RandomPolytope { .. } => "random_polytope",
            GeneratorKind::RandomSymmetric { .. } => "random_symmetric",
        }
    }
}

fn check_dim(n: usize) -> Result<(), Error> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::BadParams(format!("dimension {n} outside 1..={MAX_DIM}")));
    }
    Ok(())
}

pub fn generate(kind: &GeneratorKind, n: usize, seed: u64) -> Result<Body, Error> {
    check_dim(n)?;
    let body = match kind {
        GeneratorKind::RegularSimplex => regular_simplex(n)?,
        GeneratorKind::CenteredSimplex => centered_simplex(n)?,
        GeneratorKind::Cube => cube(n)?,
        GeneratorKind::CrossPolytope => cross_polytope(n)?,
        GeneratorKind::DoublePyramid => double_pyramid(n)?,
        GeneratorKind::RandomPolytope { vertices } => random_polytope(n, *vertices, &mut rng(seed))?,
        GeneratorKind::RandomSymmetric { pairs } => random_symmetric(n, *pairs, &mut rng(seed))?,
    };
    Ok(body.with_name(format!("{}({n})", kind.name())))
}

/// Seeded generator used by every randomized construction.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ u64::from(GENERATOR_VERSION))
}

pub fn cube(n: usize) -> Result<Body, Error> {
    check_dim(n)?;
    let pts = (0..(1u32 << n))
        .map(|m| {
            Vector::new((0..n).map(|i| Scalar::from_integer(if m >> i & 1 == 1 { 1 } else { -1 }.into())).collect())
        })
        .collect();
    Body::new(pts)
}

pub fn cross_polytope(n: usize) -> Result<Body, Error> {
    check_dim(n)?;
    let mut pts = Vec::with_capacity(2 * n);
    for i in 0..n {
        pts.push(Vector::unit(n, i));
        pts.push(-Vector::unit(n, i));
    }
    Body::new(pts)
}

pub fn centered_simplex(n: usize) -> Result<Body, Error> {
    check_dim(n)?;
    let mut pts = vec![Vector::zeros(n)];
    pts.extend((0..n).map(|i| Vector::unit(n, i)));
    let centroid = Vector::barycenter(&pts);
    Body::new(pts.iter().map(|p| p - &centroid).collect())
}

pub fn regular_simplex(n: usize) -> Result<Body, Error> {
    check_dim(n)?;
    if !(n + 1).is_power_of_two() {
        return centered_simplex(n);
    }
    // rows of a Sylvester–Hadamard matrix of order n + 1 without the
    // constant column are n + 1 equidistant points centered at the origin
    let m = n + 1;
    let sign = |i: usize, j: usize| if (i & j).count_ones().is_multiple_of(2) { 1 } else { -1 };
    let pts = (0..m).map(|i| Vector::new((1..m).map(|j| Scalar::from_integer(sign(i, j).into())).collect())).collect();
    Body::new(pts)
}

pub fn double_pyramid(n: usize) -> Result<Body, Error> {
    check_dim(n)?;
    if n < 2 {
        return Err(Error::BadParams("double pyramid needs n ≥ 2".into()));
    }
    let base = centered_simplex(n - 1)?;
    let mut pts: Vec<Vector> = base
        .vertices()
        .iter()
        .map(|v| {
            let mut c = v.coords().to_vec();
            c.push(Scalar::from_integer(0.into()));
            Vector::new(c)
        })
        .collect();
    pts.push(Vector::unit(n, n - 1));
    pts.push(-Vector::unit(n, n - 1));
    Body::new(pts)
}

/// A coordinate `k/6` with `k` uniform in `−6..=6`.
pub fn random_coordinate(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.gen_range(-DENOMINATOR..=DENOMINATOR).into(), DENOMINATOR.into())
}

pub fn random_point(n: usize, rng: &mut ChaCha8Rng) -> Vector {
    Vector::new((0..n).map(|_| random_coordinate(rng)).collect())
}

const MAX_TRIES: usize = 1000;

pub fn random_polytope(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Body, Error> {
    check_dim(n)?;
    if m < n + 1 {
        return Err(Error::BadParams(format!("{m} points cannot span dimension {n}")));
    }
    for _ in 0..MAX_TRIES {
        let body = Body::new((0..m).map(|_| random_point(n, rng)).collect())?;
        if body.is_full_dimensional() {
            return Ok(body);
        }
    }
    Err(Error::BadParams("no full-dimensional sample found".into()))
}

pub fn random_symmetric(n: usize, pairs: usize, rng: &mut ChaCha8Rng) -> Result<Body, Error> {
    check_dim(n)?;
    if pairs < n {
        return Err(Error::BadParams(format!("{pairs} symmetric pairs cannot span dimension {n}")));
    }
    for _ in 0..MAX_TRIES {
        let mut pts = Vec::with_capacity(2 * pairs);
        for _ in 0..pairs {
            let p = random_point(n, rng);
            pts.push(-&p);
            pts.push(p);
        }
        let body = Body::new(pts)?;
        if body.is_full_dimensional() {
            return Ok(body);
        }
    }
    Err(Error::BadParams("no full-dimensional sample found".into()))
}

/// A random `n`-simplex translated to put its Minkowski center (the
/// centroid) at the origin.
pub fn random_centered_simplex(n: usize, rng: &mut ChaCha8Rng) -> Result<Body, Error> {
    let s = random_polytope(n, n + 1, rng)?;
    let centroid = Vector::barycenter(s.vertices());
    Ok(s.translate(&-&centroid))
}
