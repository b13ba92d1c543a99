//! Dense two-phase tableau simplex.
//!
//! Entering variables follow Dantzig's rule with lowest-index tie breaking;
//! after a run of degenerate pivots the solver switches to Bland's rule for
//! the rest of the phase, which rules out cycling. Leaving-row ties go to the
//! row whose basic variable has the lowest index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const PIVOT_TOL: f64 = 1e-9;
const FEASIBILITY_TOL: f64 = 1e-8;
const DEGENERATE_RUN: usize = 50;
pub const DEFAULT_MAX_ITERATIONS: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `minimize objective . x` subject to the constraints and `x >= lower_bounds`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub lower_bounds: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// Sensitivity of the optimal objective to each constraint's right-hand side.
    pub duals: Vec<f64>,
    pub iterations: usize,
}

impl LpProblem {
    pub fn new(objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            objective,
            constraints: Vec::new(),
            lower_bounds: vec![0.0; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> &mut Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.lower_bounds.len() != n {
            return Err(Error::PreconditionViolated(
                "lower_bounds length differs from objective length".into(),
            ));
        }
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        if !finite(&self.objective) || !finite(&self.lower_bounds) {
            return Err(Error::PreconditionViolated("non-finite LP data".into()));
        }
        for c in &self.constraints {
            if c.coeffs.len() != n || !finite(&c.coeffs) || !c.rhs.is_finite() {
                return Err(Error::PreconditionViolated(
                    "malformed constraint row".into(),
                ));
            }
        }
        Ok(())
    }
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    cost: Vec<f64>,
    cost_value: f64,
    num_cols: usize,
    iterations: usize,
    max_iterations: usize,
}

impl Tableau {
    fn price(&mut self, c: &[f64]) {
        self.cost = c.to_vec();
        self.cost_value = 0.0;
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = c[b];
            if cb != 0.0 {
                for (r, &a) in self.cost.iter_mut().zip(&self.rows[i]) {
                    *r -= cb * a;
                }
                self.cost_value -= cb * self.rhs[i];
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col];
        for a in self.rows[row].iter_mut() {
            *a /= p;
        }
        self.rhs[row] /= p;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row];
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col];
            if factor != 0.0 {
                for (a, &pr) in self.rows[i].iter_mut().zip(&pivot_row) {
                    *a -= factor * pr;
                }
                self.rows[i][col] = 0.0;
                self.rhs[i] -= factor * pivot_rhs;
            }
        }
        let factor = self.cost[col];
        if factor != 0.0 {
            for (a, &pr) in self.cost.iter_mut().zip(&pivot_row) {
                *a -= factor * pr;
            }
            self.cost[col] = 0.0;
            self.cost_value -= factor * pivot_rhs;
        }
        self.basis[row] = col;
    }

    /// Pivots until no eligible column has a negative reduced cost.
    fn optimize(&mut self, excluded: &[bool]) -> Result<()> {
        let mut degenerate = 0usize;
        let mut bland = false;
        loop {
            if self.iterations >= self.max_iterations {
                return Err(Error::MaxIterationsExceeded(self.max_iterations));
            }
            let candidates = (0..self.num_cols).filter(|&j| !excluded[j]);
            let entering = if bland {
                candidates.into_iter().find(|&j| self.cost[j] < -PIVOT_TOL)
            } else {
                let mut best: Option<(usize, f64)> = None;
                for j in candidates {
                    let r = self.cost[j];
                    if r < -PIVOT_TOL && best.is_none_or(|(_, b)| r < b) {
                        best = Some((j, r));
                    }
                }
                best.map(|(j, _)| j)
            };
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][col];
                if a > PIVOT_TOL {
                    let ratio = self.rhs[i] / a;
                    let better = match leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < lr - 1e-12
                                || (ratio <= lr + 1e-12 && self.basis[i] < self.basis[li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, ratio)) = leave else {
                return Err(Error::UnboundedLp);
            };
            if ratio.abs() <= 1e-12 {
                degenerate += 1;
                if degenerate >= DEGENERATE_RUN {
                    bland = true;
                }
            } else {
                degenerate = 0;
            }
            self.pivot(row, col);
            self.iterations += 1;
        }
    }
}

/// Solves the LP with the default iteration cap.
pub fn simplex_solve(problem: &LpProblem) -> Result<LpSolution> {
    simplex_solve_with_limit(problem, DEFAULT_MAX_ITERATIONS)
}

pub fn simplex_solve_with_limit(problem: &LpProblem, max_iterations: usize) -> Result<LpSolution> {
    problem.validate()?;
    let n = problem.num_vars();
    let m = problem.constraints.len();

    // Shift x = lower + y so that y >= 0, then flip rows to make rhs >= 0.
    let mut signs = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut relations = Vec::with_capacity(m);
    for c in &problem.constraints {
        let shift: f64 = c
            .coeffs
            .iter()
            .zip(&problem.lower_bounds)
            .map(|(a, l)| a * l)
            .sum();
        let b = c.rhs - shift;
        let sign = if b < 0.0 { -1.0 } else { 1.0 };
        let relation = match (c.relation, sign < 0.0) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        };
        signs.push(sign);
        rows.push(c.coeffs.iter().map(|a| a * sign).collect::<Vec<_>>());
        rhs.push(b * sign);
        relations.push(relation);
    }

    // Columns: structural | surplus (one per Ge row) | identity (slack or artificial, one per row).
    let num_surplus = relations.iter().filter(|r| **r == Relation::Ge).count();
    let identity_start = n + num_surplus;
    let num_cols = identity_start + m;
    let mut full = vec![vec![0.0; num_cols]; m];
    let mut surplus_col = n;
    for i in 0..m {
        full[i][..n].copy_from_slice(&rows[i]);
        if relations[i] == Relation::Ge {
            full[i][surplus_col] = -1.0;
            surplus_col += 1;
        }
        full[i][identity_start + i] = 1.0;
    }
    let artificial: Vec<bool> = relations.iter().map(|r| *r != Relation::Le).collect();

    let mut tab = Tableau {
        rows: full,
        rhs,
        basis: (0..m).map(|i| identity_start + i).collect(),
        cost: vec![0.0; num_cols],
        cost_value: 0.0,
        num_cols,
        iterations: 0,
        max_iterations,
    };

    if artificial.iter().any(|&a| a) {
        let mut phase1 = vec![0.0; num_cols];
        for i in 0..m {
            if artificial[i] {
                phase1[identity_start + i] = 1.0;
            }
        }
        tab.price(&phase1);
        tab.optimize(&vec![false; num_cols])?;
        let infeasibility = -tab.cost_value;
        let scale = 1.0 + tab.rhs.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        if infeasibility > FEASIBILITY_TOL * scale {
            return Err(Error::InfeasibleLp);
        }
        // Drive remaining artificials out of the basis where possible.
        for i in 0..m {
            let b = tab.basis[i];
            if b >= identity_start && artificial[b - identity_start] {
                if let Some(col) = (0..identity_start).find(|&j| tab.rows[i][j].abs() > PIVOT_TOL) {
                    tab.pivot(i, col);
                }
            }
        }
    }

    // Phase 2: artificial columns may not re-enter.
    let mut cost = vec![0.0; tab.num_cols];
    cost[..n].copy_from_slice(&problem.objective);
    tab.price(&cost);
    let mut excluded = vec![false; tab.num_cols];
    excluded[identity_start..identity_start + m].copy_from_slice(&artificial[..m]);
    tab.optimize(&excluded)?;

    let mut y = vec![0.0; tab.num_cols];
    for (i, &b) in tab.basis.iter().enumerate() {
        y[b] = tab.rhs[i];
    }
    let x: Vec<f64> = (0..n).map(|j| problem.lower_bounds[j] + y[j]).collect();
    let objective = x.iter().zip(&problem.objective).map(|(a, c)| a * c).sum();
    // Reduced cost of row i's identity column is -pi_i for the sign-normalized row.
    let duals = (0..m)
        .map(|i| -tab.cost[identity_start + i] * signs[i])
        .collect();
    Ok(LpSolution {
        x,
        objective,
        duals,
        iterations: tab.iterations,
    })
}
