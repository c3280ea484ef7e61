//! Batch verification suites over seeded instances. Instances run in
//! parallel and are reported in index order.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::report::{body, scalar, vector};
use crate::constructions::generate::{
    random_centered_simplex, random_polytope, random_symmetric, regular_simplex, rng,
};
use crate::constructions::{completion, DEFAULT_MAX_ITER};
use crate::kernel::Scalar;
use crate::polytope::{equal_sets, Body};
use crate::predicates::{
    diametrical_endpoint_check, is_complete, is_constant_width, is_pseudo_complete, is_reduced_simplex, symmetral_half,
    verify_asymcont, verify_leichtweiss, verify_tcomplete,
};
use crate::radii::{asymmetry, diameter, width};
use crate::Error;

pub const SUITES: [&str; 6] =
    ["tcomplete", "leichtweiss", "asymcont", "simplex_cw_theorem", "polyimplgen2d", "gauge_lemma"];

#[derive(Clone, Debug)]
pub struct InstanceResult {
    pub index: usize,
    pub passes: bool,
    pub details: Value,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub suite: String,
    pub seed: u64,
    pub instances: Vec<InstanceResult>,
    /// Instances on which the pseudo-completeness ratio was checked.
    pub ratio_checks: usize,
}

impl SuiteOutcome {
    pub fn passes(&self) -> bool {
        self.instances.iter().all(|i| i.passes)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "seed": self.seed,
            "count": self.instances.len(),
            "passed": self.instances.iter().filter(|i| i.passes).count(),
            "ratio_checks": self.ratio_checks,
            "instances": self.instances.iter().map(|i| json!({
                "index": i.index, "passes": i.passes, "details": i.details,
            })).collect::<Vec<_>>(),
        })
    }
}

/// For complete `K`: `D = r + R` and `R/D = s(K)/(s(K) + 1)` with respect to
/// `(C − C)/2`. `None` when `K` is not complete.
pub fn ratio_check(k: &Body, c: &Body) -> Result<Option<(bool, Value)>, Error> {
    let sym = symmetral_half(c);
    if !is_complete(k, &sym)?.is_complete {
        return Ok(None);
    }
    let p = is_pseudo_complete(k, c)?;
    let s = asymmetry(k)?.s;
    let ratio = &p.circumradius / &p.diameter;
    let expected = &s / (&s + Scalar::from_integer(1.into()));
    let ok = p.is_pseudo_complete && ratio == expected;
    Ok(Some((
        ok,
        json!({ "pseudo_complete": p.is_pseudo_complete, "R/D": scalar(&ratio), "s/(s+1)": scalar(&expected) }),
    )))
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    rng(seed.wrapping_add((index as u64).wrapping_mul(0x2545_f491_4f6c_dd1d)))
}

fn dim_for(index: usize) -> usize {
    2 + index % 2
}

/// A Minkowski-centered simplex and a symmetric gauge. Every third gauge is
/// `S − S`, so the complete case is represented.
fn simplex_and_gauge(index: usize, r: &mut ChaCha8Rng) -> Result<(Body, Body), Error> {
    let n = dim_for(index);
    let s = random_centered_simplex(n, r)?;
    let c = if index.is_multiple_of(3) { s.difference_body().clone() } else { random_symmetric(n, n + 1, r)? };
    Ok((s, c))
}

fn run_instance(suite: &str, seed: u64, index: usize) -> Result<(InstanceResult, bool), Error> {
    let mut r = instance_rng(seed, index);
    let mut ratio_checked = false;
    let mut ratio = |k: &Body, c: &Body, details: &mut Value, ok: &mut bool| -> Result<(), Error> {
        if let Some((pass, v)) = ratio_check(k, c)? {
            ratio_checked = true;
            *ok &= pass;
            details["ratio"] = v;
        }
        Ok(())
    };
    let (passes, details) = match suite {
        "tcomplete" => {
            let (s, c) = simplex_and_gauge(index, &mut r)?;
            let rep = verify_tcomplete(&s, &c)?;
            let mut ok = rep.agreement;
            let mut d = json!({
                "n": s.dim(), "conditions": rep.conditions(), "agreement": rep.agreement,
                "D": scalar(&rep.diameter), "r": scalar(&rep.inradius), "R": scalar(&rep.circumradius),
            });
            ratio(&s, &c, &mut d, &mut ok)?;
            (ok, d)
        }
        "leichtweiss" => {
            let (s, c) = simplex_and_gauge(index, &mut r)?;
            let rep = verify_leichtweiss(&s, &c)?;
            let d = json!({
                "n": s.dim(), "ratio": rep.ratio, "sandwich": rep.sandwich, "agreement": rep.agreement,
                "w": scalar(&rep.width), "r": scalar(&rep.inradius),
            });
            (rep.agreement, d)
        }
        "asymcont" => {
            let p = if index == 0 {
                regular_simplex(3)?
            } else {
                let n = dim_for(index);
                random_polytope(n, n + 1 + index % 4, &mut r)?
            };
            let rep = verify_asymcont(&p)?;
            let d = json!({
                "n": p.dim(), "s": scalar(&rep.asymmetry), "touching": rep.touching.len(),
                "inner_in_middle": rep.inner_in_middle, "middle_in_outer": rep.middle_in_outer,
                "incidences_hold": rep.incidences.iter().all(|i| i.holds()),
            });
            (rep.passes, d)
        }
        "simplex_cw_theorem" => {
            let (s, c) = simplex_and_gauge(index, &mut r)?;
            let complete = is_complete(&s, &c)?.is_complete;
            let reduced = is_reduced_simplex(&s, &c)?.is_reduced;
            let w = width(&s, &c)?.value;
            let dd = diameter(&s, &c)?.value;
            let mut ok = !(complete && reduced) || w == dd;
            let mut d = json!({
                "n": s.dim(), "complete": complete, "reduced": reduced, "hypothesis": complete && reduced,
                "w": scalar(&w), "D": scalar(&dd),
            });
            ratio(&s, &c, &mut d, &mut ok)?;
            (ok, d)
        }
        "polyimplgen2d" => {
            let k = random_polytope(2, 3 + index % 4, &mut r)?;
            let c = random_polytope(2, 3 + (index / 4) % 4, &mut r)?;
            let done = completion(&k, &c, DEFAULT_MAX_ITER)?;
            let target = c.difference_body().scale(&(&done.diameter / Scalar::from_integer(2.into())));
            let mut ok = equal_sets(done.body.difference_body(), &target) && done.body.contains_body(&k);
            let mut d = json!({
                "K": body(&k), "C": body(&c), "Kstar": body(&done.body),
                "adjoined": done.iterations, "D": scalar(&done.diameter), "difference_matches": ok,
            });
            ratio(&done.body, &c, &mut d, &mut ok)?;
            (ok, d)
        }
        "gauge_lemma" => {
            let n = dim_for(index);
            let k = random_polytope(n, n + 1 + index % 3, &mut r)?;
            let c = random_polytope(n, n + 2, &mut r)?;
            let cc = c.difference_body();
            let two = Scalar::from_integer(2.into());
            let widths = width(&k, &c)?.value == &two * width(&k, cc)?.value;
            let diams = diameter(&k, &c)?.value == &two * diameter(&k, cc)?.value;
            let cw = is_constant_width(&k, &c)?.is_cw == is_constant_width(&k, cc)?.is_cw;
            let comp = is_complete(&k, &c)?.is_complete == is_complete(&k, cc)?.is_complete;
            let mut d = json!({ "n": n, "width_halves": widths, "diameter_halves": diams, "cw_agrees": cw, "complete_agrees": comp });
            let mut ok = widths && diams && cw && comp;
            if n == 2 {
                let done = completion(&k, &c, DEFAULT_MAX_ITER)?;
                let star = &done.body;
                let comp_star = is_complete(star, &c)?.is_complete && is_complete(star, cc)?.is_complete;
                let endpoints = diametrical_endpoint_check(star, &c)?.iter().all(|e| e.is_endpoint);
                d["completion_complete"] = json!(comp_star);
                d["completion_endpoints"] = json!(endpoints);
                ok &= comp_star && endpoints;
                ratio(star, &c, &mut d, &mut ok)?;
            }
            (ok, d)
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok((InstanceResult { index, passes, details }, ratio_checked))
}

pub fn run_suite(suite: &str, seed: u64, count: usize) -> Result<SuiteOutcome, Error> {
    if !SUITES.contains(&suite) {
        return Err(Error::UnknownSuite(suite.to_string()));
    }
    let results =
        (0..count).into_par_iter().map(|i| run_instance(suite, seed, i)).collect::<Result<Vec<_>, Error>>()?;
    let ratio_checks = results.iter().filter(|(_, r)| *r).count();
    Ok(SuiteOutcome {
        suite: suite.to_string(),
        seed,
        instances: results.into_iter().map(|(i, _)| i).collect(),
        ratio_checks,
    })
}

/// The three nested bodies of the asymmetry containment chain.
pub fn asymcont_bodies(p: &Body) -> Result<(bool, [Body; 3], Value), Error> {
    let rep = verify_asymcont(p)?;
    let details = json!({
        "s": scalar(&rep.asymmetry),
        "translation": vector(&rep.translation),
        "passes": rep.passes,
    });
    Ok((
        rep.passes,
        [rep.inner.with_name("inner"), rep.middle.with_name("middle"), rep.outer.with_name("outer")],
        details,
    ))
}
