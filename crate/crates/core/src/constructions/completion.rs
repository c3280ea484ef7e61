//! Completion by adjoining spherical-hull vertices, and greedy reduction
//! candidates.

use num_traits::Zero;

use crate::kernel::{Scalar, Vector};
use crate::polytope::Body;
use crate::predicates::{check_gauge, is_complete, reduced_necessary, ReducedNecessaryReport};
use crate::radii::{diameter, width};
use crate::Error;

pub const DEFAULT_MAX_ITER: usize = 10_000;

#[derive(Clone, Debug)]
pub struct Completion {
    pub body: Body,
    /// Number of adjoined points.
    pub iterations: usize,
    pub adjoined: Vec<Vector>,
    pub diameter: Scalar,
}

/// Grows `K` to a complete body of the same diameter. Each step adjoins the
/// lexicographically smallest vertex of `⋂_{v ∈ ext K} (v + (D/2)(C − C))`
/// not yet in `K`; the loop stops once that intersection equals `K`.
pub fn completion(k: &Body, c: &Body, max_iter: usize) -> Result<Completion, Error> {
    check_gauge(k, c)?;
    if max_iter == 0 {
        return Err(Error::BadParams("max_iter must be at least 1".into()));
    }
    let d = diameter(k, c)?.value;
    let mut current = k.clone();
    let mut adjoined = Vec::new();
    for _ in 0..=max_iter {
        let test = is_complete(&current, c)?;
        if test.diameter != d {
            return Err(Error::Internal("completion step changed the diameter".into()));
        }
        let Some(w) = test.witness else {
            let body = match k.name() {
                Some(name) => current.with_name(format!("{name}*")),
                None => current,
            };
            return Ok(Completion { body, iterations: adjoined.len(), adjoined, diameter: d });
        };
        if adjoined.len() == max_iter {
            break;
        }
        let mut pts = current.vertices().to_vec();
        pts.push(w.clone());
        current = Body::new(pts)?;
        adjoined.push(w);
    }
    Err(Error::NotConverged { iterations: max_iter, partial: Box::new(current) })
}

#[derive(Clone, Debug)]
pub enum Reduction {
    Candidate {
        body: Body,
        /// Vertices dropped, in removal order.
        removed: Vec<Vector>,
        necessary: Box<ReducedNecessaryReport>,
    },
    /// `K` has width zero; returned unchanged.
    NoProgress { body: Body },
}

/// Repeatedly drops the lexicographically first vertex whose removal keeps
/// the width, then runs the necessary reducedness test on what is left.
/// The result is a candidate only.
pub fn reduction_candidate(k: &Body, c: &Body) -> Result<Reduction, Error> {
    check_gauge(k, c)?;
    let w = width(k, c)?.value;
    if w.is_zero() {
        return Ok(Reduction::NoProgress { body: k.clone() });
    }
    let mut current = k.clone();
    let mut removed = Vec::new();
    'outer: loop {
        for (i, v) in current.vertices().iter().enumerate() {
            let rest: Vec<Vector> =
                current.vertices().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
            let smaller = Body::new(rest)?;
            if smaller.is_full_dimensional() && width(&smaller, c)?.value == w {
                removed.push(v.clone());
                current = smaller;
                continue 'outer;
            }
        }
        break;
    }
    let necessary = Box::new(reduced_necessary(&current, c)?);
    Ok(Reduction::Candidate { body: current, removed, necessary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cube, v};
    use crate::kernel::{int, rat};
    use crate::predicates::{is_constant_width, symmetral_half};

    #[test]
    fn complete_body_is_a_fixed_point() {
        let c = cube(2);
        let out = completion(&c, &c, 10).unwrap();
        assert_eq!(out.iterations, 0);
        assert_eq!(out.body, c);
    }

    #[test]
    fn segment_in_the_square_plane() {
        let k = Body::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        let c = cube(2);
        let out = completion(&k, &c, DEFAULT_MAX_ITER).unwrap();
        assert_eq!(out.diameter, int(1));
        assert!(out.body.contains_body(&k));
        assert!(is_complete(&out.body, &c).unwrap().is_complete);
        assert_eq!(diameter(&out.body, &c).unwrap().value, int(1));
        // planar completions are of constant width
        let target = c.difference_body().scale(&rat(1, 2));
        assert!(crate::polytope::equal_sets(out.body.difference_body(), &target));
    }

    #[test]
    fn iteration_cap_returns_the_partial_body() {
        let k = Body::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        let c = Body::from_i64(&[&[2, 0], &[1, 2], &[-1, 2], &[-2, 0], &[-1, -2], &[1, -2]]).unwrap();
        let full = completion(&k, &c, DEFAULT_MAX_ITER).unwrap();
        assert!(full.iterations >= 1);
        match completion(&k, &c, 1) {
            Ok(out) => assert_eq!(out.iterations, 1),
            Err(Error::NotConverged { iterations, partial }) => {
                assert_eq!(iterations, 1);
                assert!(partial.contains_body(&k));
            }
            Err(e) => panic!("{e}"),
        }
        assert!(matches!(completion(&k, &c, 0), Err(Error::BadParams(_))));
    }

    #[test]
    fn completion_keeps_the_diameter_in_3d() {
        let k = Body::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        let c = symmetral_half(&crate::fixtures::tetrahedron());
        let out = completion(&k, &c, DEFAULT_MAX_ITER).unwrap();
        assert_eq!(diameter(&out.body, &c).unwrap().value, diameter(&k, &c).unwrap().value);
        assert!(out.body.contains_body(&k));
        assert!(is_complete(&out.body, &c).unwrap().is_complete);
    }

    #[test]
    fn constant_width_cube_keeps_all_vertices() {
        let c = cube(3);
        assert!(is_constant_width(&c, &c).unwrap().is_cw);
        let Reduction::Candidate { body, removed, necessary } = reduction_candidate(&c, &c).unwrap() else {
            panic!("cube has positive width");
        };
        assert!(removed.is_empty());
        assert_eq!(body, c);
        assert!(necessary.passes);
    }

    #[test]
    fn appended_far_vertex_is_pruned() {
        let c = cube(2);
        let k = Body::from_i64(&[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1], &[5, 0]]).unwrap();
        let Reduction::Candidate { body, removed, .. } = reduction_candidate(&k, &c).unwrap() else {
            panic!("positive width");
        };
        assert!(removed.contains(&v(&[5, 0])));
        assert!(k.contains_body(&body));
        assert_eq!(width(&body, &c).unwrap().value, int(2));
    }

    #[test]
    fn segment_makes_no_progress() {
        let k = Body::from_i64(&[&[0, 0], &[1, 1]]).unwrap();
        assert!(matches!(reduction_candidate(&k, &cube(2)).unwrap(), Reduction::NoProgress { .. }));
    }
}
