//! Dense two-phase simplex over exact rationals.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, ratio ties
//! broken by lowest basic index), so every solve terminates and is
//! deterministic. Each returned [`LpSolution`] carries a certificate
//! (dual multipliers, Farkas vector or improving ray) and is checked against
//! the problem before it leaves [`lp_solve`].

use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{One, Signed, Zero};

use super::scalar::Scalar;
use super::vector::Vector;
use crate::polytope::Halfspace;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vector,
    pub relation: Relation,
    pub rhs: Scalar,
}

/// `sense objective·x` subject to the constraint rows and optional
/// per-variable lower bounds (`None` means the variable is free).
#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vector,
    pub constraints: Vec<Constraint>,
    pub lower_bounds: Vec<Option<Scalar>>,
}

impl LpProblem {
    /// New problem with all variables free.
    pub fn new(sense: Sense, objective: Vector) -> Self {
        let n = objective.dim();
        LpProblem { sense, objective, constraints: Vec::new(), lower_bounds: vec![None; n] }
    }

    pub fn minimize(objective: Vector) -> Self {
        Self::new(Sense::Minimize, objective)
    }

    pub fn maximize(objective: Vector) -> Self {
        Self::new(Sense::Maximize, objective)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.dim()
    }

    pub fn constrain(mut self, coeffs: Vector, relation: Relation, rhs: Scalar) -> Self {
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn le(self, coeffs: Vector, rhs: Scalar) -> Self {
        self.constrain(coeffs, Relation::Le, rhs)
    }

    pub fn eq(self, coeffs: Vector, rhs: Scalar) -> Self {
        self.constrain(coeffs, Relation::Eq, rhs)
    }

    pub fn ge(self, coeffs: Vector, rhs: Scalar) -> Self {
        self.constrain(coeffs, Relation::Ge, rhs)
    }

    pub fn lower_bound(mut self, var: usize, bound: Scalar) -> Self {
        self.lower_bounds[var] = Some(bound);
        self
    }

    pub fn nonnegative(mut self) -> Self {
        self.lower_bounds = vec![Some(Scalar::zero()); self.num_vars()];
        self
    }

    fn check_dimensions(&self) -> Result<(), Error> {
        let n = self.num_vars();
        if self.lower_bounds.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.lower_bounds.len() });
        }
        for c in &self.constraints {
            if c.coeffs.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.coeffs.dim() });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solver output.
///
/// Dual sign conventions (minimization): `≤` rows carry `y ≤ 0`, `≥` rows
/// `y ≥ 0`, equality rows are free, and the reduced costs `c − Aᵀy` are
/// `≥ 0` on bounded variables and zero on free ones. The objective equals
/// `b·y + Σ l_j (c − Aᵀy)_j`. For maximization all dual signs flip.
///
/// An infeasibility certificate `u` has `u ≥ 0` on `≤` rows, `u ≤ 0` on `≥`
/// rows, `z = Aᵀu` zero on free variables and `≥ 0` on bounded ones, and
/// `b·u < z·l`.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub primal: Option<Vector>,
    pub objective_value: Option<Scalar>,
    pub dual: Option<Vector>,
    pub infeasibility_certificate: Option<Vector>,
    pub unbounded_ray: Option<Vector>,
}

static SOLVED: AtomicU64 = AtomicU64::new(0);
static VERIFIED: AtomicU64 = AtomicU64::new(0);

/// `(solved, verified)` counts for every LP solved in this process.
pub fn solve_stats() -> (u64, u64) {
    (SOLVED.load(Ordering::Relaxed), VERIFIED.load(Ordering::Relaxed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Column {
    Shifted(usize),
    Positive(usize),
    Negative(usize),
    Slack(usize),
    Artificial(usize),
}

struct Tableau {
    rows: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
    basis: Vec<usize>,
    reduced: Vec<Scalar>,
    value: Scalar,
}

impl Tableau {
    fn pivot(&mut self, r: usize, q: usize) {
        let inv = self.rows[r][q].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][q].is_zero() {
                continue;
            }
            let f = self.rows[i][q].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                self.rows[i][j] -= delta;
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.reduced[q].is_zero() {
            let f = self.reduced[q].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                self.reduced[j] -= delta;
            }
            self.value += &f * &pivot_rhs;
        }
        self.basis[r] = q;
    }

    /// Sets the reduced-cost row for a cost vector given the current basis.
    fn price(&mut self, costs: &[Scalar]) {
        self.reduced = costs.to_vec();
        self.value = Scalar::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (j, x) in self.rows[i].iter().enumerate() {
                if !x.is_zero() {
                    self.reduced[j] -= cb * x;
                }
            }
            self.value += cb * &self.rhs[i];
        }
    }

    /// Runs Bland's rule until optimal (`None`) or an unbounded column is found.
    fn run(&mut self, allowed: impl Fn(usize) -> bool) -> Option<usize> {
        loop {
            let entering = (0..self.reduced.len())
                .find(|&j| allowed(j) && self.reduced[j].is_negative() && !self.basis.contains(&j));
            let q = entering?;
            let mut best: Option<(usize, Scalar)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, q),
                None => return Some(q),
            }
        }
    }

    fn column_values(&self, ncols: usize) -> Vec<Scalar> {
        let mut x = vec![Scalar::zero(); ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.rhs[i].clone();
        }
        x
    }
}

/// Solves `p` exactly. The returned certificate is verified before return.
pub fn lp_solve(p: &LpProblem) -> Result<LpSolution, Error> {
    p.check_dimensions()?;
    let n = p.num_vars();
    let m = p.constraints.len();

    let mut columns = Vec::new();
    for j in 0..n {
        if p.lower_bounds[j].is_some() {
            columns.push(Column::Shifted(j));
        } else {
            columns.push(Column::Positive(j));
            columns.push(Column::Negative(j));
        }
    }
    for (i, c) in p.constraints.iter().enumerate() {
        if c.relation != Relation::Eq {
            columns.push(Column::Slack(i));
        }
    }
    let first_artificial = columns.len();
    columns.extend((0..m).map(Column::Artificial));
    let ncols = columns.len();

    let mut signs = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, c) in p.constraints.iter().enumerate() {
        let mut b = c.rhs.clone();
        for (j, lb) in p.lower_bounds.iter().enumerate() {
            if let Some(l) = lb {
                if !l.is_zero() && !c.coeffs[j].is_zero() {
                    b -= &c.coeffs[j] * l;
                }
            }
        }
        let sign = if b.is_negative() { -Scalar::one() } else { Scalar::one() };
        let mut row = vec![Scalar::zero(); ncols];
        for (k, col) in columns.iter().enumerate() {
            let entry = match *col {
                Column::Shifted(j) | Column::Positive(j) => c.coeffs[j].clone(),
                Column::Negative(j) => -c.coeffs[j].clone(),
                Column::Slack(s) if s == i => match c.relation {
                    Relation::Le => Scalar::one(),
                    _ => -Scalar::one(),
                },
                Column::Artificial(a) if a == i => {
                    row[k] = Scalar::one();
                    continue;
                }
                _ => continue,
            };
            row[k] = &entry * &sign;
        }
        rows.push(row);
        rhs.push(b * &sign);
        signs.push(sign);
    }

    let mut t =
        Tableau { rows, rhs, basis: (first_artificial..ncols).collect(), reduced: Vec::new(), value: Scalar::zero() };

    // phase 1: minimize the sum of artificials
    let phase1_costs: Vec<Scalar> =
        (0..ncols).map(|k| if k >= first_artificial { Scalar::one() } else { Scalar::zero() }).collect();
    t.price(&phase1_costs);
    t.run(|_| true);

    let solution = if t.value.is_positive() {
        // y_i = 1 - d_art_i; u = -sign_i * y_i
        let cert = Vector::new(
            (0..m)
                .map(|i| {
                    let y = Scalar::one() - &t.reduced[first_artificial + i];
                    -(y * &signs[i])
                })
                .collect(),
        );
        LpSolution {
            status: LpStatus::Infeasible,
            primal: None,
            objective_value: None,
            dual: None,
            infeasibility_certificate: Some(cert),
            unbounded_ray: None,
        }
    } else {
        // drive zero-level artificials out of the basis where possible
        for r in 0..m {
            if t.basis[r] >= first_artificial {
                if let Some(q) = (0..first_artificial).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, q);
                }
            }
        }
        let flip = p.sense == Sense::Maximize;
        let costs: Vec<Scalar> = columns
            .iter()
            .map(|col| {
                let c = match *col {
                    Column::Shifted(j) | Column::Positive(j) => p.objective[j].clone(),
                    Column::Negative(j) => -p.objective[j].clone(),
                    _ => Scalar::zero(),
                };
                if flip {
                    -c
                } else {
                    c
                }
            })
            .collect();
        t.price(&costs);
        let unbounded = t.run(|j| j < first_artificial);

        let values = t.column_values(ncols);
        let primal = recover(&columns, &values, p);
        match unbounded {
            None => {
                let dual = Vector::new(
                    (0..m)
                        .map(|i| {
                            let y = -t.reduced[first_artificial + i].clone() * &signs[i];
                            if flip {
                                -y
                            } else {
                                y
                            }
                        })
                        .collect(),
                );
                let value = p.objective.dot(&primal);
                LpSolution {
                    status: LpStatus::Optimal,
                    primal: Some(primal),
                    objective_value: Some(value),
                    dual: Some(dual),
                    infeasibility_certificate: None,
                    unbounded_ray: None,
                }
            }
            Some(q) => {
                let mut dir = vec![Scalar::zero(); ncols];
                dir[q] = Scalar::one();
                for (i, &b) in t.basis.iter().enumerate() {
                    dir[b] = -t.rows[i][q].clone();
                }
                let mut ray = Vector::zeros(n);
                for (k, col) in columns.iter().enumerate() {
                    match *col {
                        Column::Shifted(j) | Column::Positive(j) => ray[j] += &dir[k],
                        Column::Negative(j) => ray[j] -= &dir[k],
                        _ => {}
                    }
                }
                LpSolution {
                    status: LpStatus::Unbounded,
                    primal: Some(primal),
                    objective_value: None,
                    dual: None,
                    infeasibility_certificate: None,
                    unbounded_ray: Some(ray),
                }
            }
        }
    };

    SOLVED.fetch_add(1, Ordering::Relaxed);
    verify_solution(p, &solution).map_err(Error::Internal)?;
    VERIFIED.fetch_add(1, Ordering::Relaxed);
    Ok(solution)
}

fn recover(columns: &[Column], values: &[Scalar], p: &LpProblem) -> Vector {
    let mut x = Vector::new(p.lower_bounds.iter().map(|l| l.clone().unwrap_or_else(Scalar::zero)).collect());
    for (k, col) in columns.iter().enumerate() {
        match *col {
            Column::Shifted(j) | Column::Positive(j) => x[j] += &values[k],
            Column::Negative(j) => x[j] -= &values[k],
            _ => {}
        }
    }
    x
}

fn row_holds(c: &Constraint, x: &Vector) -> bool {
    let lhs = c.coeffs.dot(x);
    match c.relation {
        Relation::Le => lhs <= c.rhs,
        Relation::Eq => lhs == c.rhs,
        Relation::Ge => lhs >= c.rhs,
    }
}

fn primal_feasible(p: &LpProblem, x: &Vector) -> bool {
    x.dim() == p.num_vars()
        && p.constraints.iter().all(|c| row_holds(c, x))
        && p.lower_bounds.iter().zip(x.iter()).all(|(l, v)| l.as_ref().is_none_or(|l| v >= l))
}

/// Exact check of the certificate carried by `s`.
pub fn verify_solution(p: &LpProblem, s: &LpSolution) -> Result<(), String> {
    let n = p.num_vars();
    match s.status {
        LpStatus::Optimal => {
            let x = s.primal.as_ref().ok_or("optimal without primal")?;
            let y = s.dual.as_ref().ok_or("optimal without dual")?;
            let value = s.objective_value.as_ref().ok_or("optimal without value")?;
            if !primal_feasible(p, x) {
                return Err("primal point infeasible".into());
            }
            if y.dim() != p.constraints.len() {
                return Err("dual length mismatch".into());
            }
            // work in minimization form
            let flip = p.sense == Sense::Maximize;
            let sgn = |v: &Scalar| if flip { -v.clone() } else { v.clone() };
            for (c, yi) in p.constraints.iter().zip(y.iter()) {
                let yi = sgn(yi);
                let ok = match c.relation {
                    Relation::Le => !yi.is_positive(),
                    Relation::Ge => !yi.is_negative(),
                    Relation::Eq => true,
                };
                if !ok {
                    return Err("dual sign violated".into());
                }
                if !yi.is_zero() && c.coeffs.dot(x) != c.rhs {
                    return Err("complementary slackness violated on a row".into());
                }
            }
            let mut dual_value = Scalar::zero();
            for (c, yi) in p.constraints.iter().zip(y.iter()) {
                dual_value += &c.rhs * yi;
            }
            for j in 0..n {
                let mut d = p.objective[j].clone();
                for (c, yi) in p.constraints.iter().zip(y.iter()) {
                    if !c.coeffs[j].is_zero() && !yi.is_zero() {
                        d -= &c.coeffs[j] * yi;
                    }
                }
                match &p.lower_bounds[j] {
                    None if !d.is_zero() => return Err("nonzero reduced cost on free variable".into()),
                    None => {}
                    Some(l) => {
                        if sgn(&d).is_negative() {
                            return Err("reduced cost sign violated".into());
                        }
                        if !d.is_zero() && &x[j] != l {
                            return Err("complementary slackness violated on a bound".into());
                        }
                        dual_value += l * &d;
                    }
                }
            }
            if &p.objective.dot(x) != value || dual_value != *value {
                return Err("primal and dual objectives differ".into());
            }
            Ok(())
        }
        LpStatus::Infeasible => {
            let u = s.infeasibility_certificate.as_ref().ok_or("infeasible without certificate")?;
            if u.dim() != p.constraints.len() {
                return Err("certificate length mismatch".into());
            }
            let mut ub = Scalar::zero();
            for (c, ui) in p.constraints.iter().zip(u.iter()) {
                let ok = match c.relation {
                    Relation::Le => !ui.is_negative(),
                    Relation::Ge => !ui.is_positive(),
                    Relation::Eq => true,
                };
                if !ok {
                    return Err("Farkas sign violated".into());
                }
                ub += &c.rhs * ui;
            }
            let mut zl = Scalar::zero();
            for j in 0..n {
                let mut z = Scalar::zero();
                for (c, ui) in p.constraints.iter().zip(u.iter()) {
                    if !c.coeffs[j].is_zero() && !ui.is_zero() {
                        z += &c.coeffs[j] * ui;
                    }
                }
                match &p.lower_bounds[j] {
                    None if !z.is_zero() => return Err("Farkas combination nonzero on free variable".into()),
                    None => {}
                    Some(l) => {
                        if z.is_negative() {
                            return Err("Farkas combination negative on bounded variable".into());
                        }
                        zl += &z * l;
                    }
                }
            }
            if ub < zl {
                Ok(())
            } else {
                Err("Farkas inequality not strict".into())
            }
        }
        LpStatus::Unbounded => {
            let x = s.primal.as_ref().ok_or("unbounded without feasible point")?;
            let r = s.unbounded_ray.as_ref().ok_or("unbounded without ray")?;
            if !primal_feasible(p, x) {
                return Err("unbounded: base point infeasible".into());
            }
            for c in &p.constraints {
                let a = c.coeffs.dot(r);
                let ok = match c.relation {
                    Relation::Le => !a.is_positive(),
                    Relation::Ge => !a.is_negative(),
                    Relation::Eq => a.is_zero(),
                };
                if !ok {
                    return Err("ray leaves the feasible region".into());
                }
            }
            if p.lower_bounds.iter().zip(r.iter()).any(|(l, v)| l.is_some() && v.is_negative()) {
                return Err("ray violates a bound".into());
            }
            let slope = p.objective.dot(r);
            let improving = match p.sense {
                Sense::Minimize => slope.is_negative(),
                Sense::Maximize => slope.is_positive(),
            };
            if improving {
                Ok(())
            } else {
                Err("ray does not improve the objective".into())
            }
        }
    }
}

/// Outcome of optimizing over an intersection of halfspaces.
#[derive(Clone, Debug, PartialEq)]
pub enum HalfspaceLp {
    /// Optimal point, value and one nonnegative multiplier per halfspace
    /// with `Σ y_i a_i = −objective` (the Lagrange certificate).
    Optimal {
        point: Vector,
        value: Scalar,
        multipliers: Vector,
    },
    Infeasible,
    Unbounded,
}

/// Minimizes `objective·x` over `{x : a_i·x ≤ b_i}` with `x` free.
///
/// Solved through the dual program, which has one row per coordinate and
/// one column per halfspace. Problems here have few variables and many
/// halfspaces, so the dual tableau stays small.
pub fn minimize_over(objective: &Vector, halfspaces: &[Halfspace]) -> Result<HalfspaceLp, Error> {
    let d = objective.dim();
    let dual_objective = Vector::new(halfspaces.iter().map(|h| h.offset.clone()).collect());
    let columns = |k: usize| Vector::new(halfspaces.iter().map(|h| h.normal[k].clone()).collect());
    let build = |target: &Vector| {
        let mut lp = LpProblem::minimize(dual_objective.clone()).nonnegative();
        for k in 0..d {
            lp = lp.eq(columns(k), -target[k].clone());
        }
        lp
    };
    for h in halfspaces {
        if h.normal.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: h.normal.dim() });
        }
    }
    let sol = lp_solve(&build(objective))?;
    match sol.status {
        LpStatus::Optimal => {
            let point = sol.dual.expect("optimal dual");
            let multipliers = sol.primal.expect("optimal primal");
            let value = objective.dot(&point);
            debug_assert_eq!(value, -sol.objective_value.expect("value"));
            Ok(HalfspaceLp::Optimal { point, value, multipliers })
        }
        LpStatus::Unbounded => Ok(HalfspaceLp::Infeasible),
        LpStatus::Infeasible => {
            let feas = lp_solve(&build(&Vector::zeros(d)))?;
            Ok(match feas.status {
                LpStatus::Optimal => HalfspaceLp::Unbounded,
                _ => HalfspaceLp::Infeasible,
            })
        }
    }
}

/// Lexicographically smallest point of `{x : a_i·x ≤ b_i}`; `None` when empty.
pub fn lexmin_point(halfspaces: &[Halfspace], dim: usize) -> Result<Option<Vector>, Error> {
    let mut rows = halfspaces.to_vec();
    let mut point = None;
    for k in 0..dim {
        match minimize_over(&Vector::unit(dim, k), &rows)? {
            HalfspaceLp::Optimal { point: p, value, .. } => {
                rows.push(Halfspace::new(Vector::unit(dim, k), value.clone()));
                rows.push(Halfspace::new(-Vector::unit(dim, k), -value));
                point = Some(p);
            }
            HalfspaceLp::Infeasible => return Ok(None),
            HalfspaceLp::Unbounded => return Err(Error::Unbounded),
        }
    }
    if dim == 0 {
        return Ok(Some(Vector::zeros(0)));
    }
    Ok(point)
}

/// Feasibility of `{x : a_i·x ≤ b_i}`; returns a point when nonempty.
pub fn feasible_point(halfspaces: &[Halfspace], dim: usize) -> Result<Option<Vector>, Error> {
    match minimize_over(&Vector::zeros(dim), halfspaces)? {
        HalfspaceLp::Optimal { point, .. } => Ok(Some(point)),
        HalfspaceLp::Infeasible => Ok(None),
        HalfspaceLp::Unbounded => unreachable!("zero objective is bounded"),
    }
}
