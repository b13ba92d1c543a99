//! The cap-refined Delsarte bound.
//!
//! For `t0 < -s` and a polynomial `f` with
//! (B1) `f <= 0` on `[t0, s]`, (B2) `f` decreasing on `[-1, t0]`,
//! (B3) `f_0 > 0` and `f_k >= 0`, every `s`-code satisfies
//! `|C| <= max(h_0, ..., h_mu) / f_0`, where `h_m` is the largest value of
//! `f(1) + sum_j f(<e_1, y_j>)` over `m` unit vectors `y_j` in the cap
//! `<e_1, y> <= t0` with pairwise inner products at most `s`, and `mu` bounds
//! how many code points such a cap can hold.
//!
//! `h_0 = f(1)` and `h_1 = f(1) + f(-1)` are exact. For `n = 3, s = 1/2`,
//! `h_2` reduces to a one-dimensional maximum: two cap points at least 60
//! degrees apart do best on a great circle through `-e_1`, on opposite sides
//! of it, so `h_2 = max f(1) + f(-cos phi) + f(-cos(pi/3 - phi))` over the
//! `phi` keeping both points in the cap. Everything else comes from a
//! multi-start local search, which only ever finds lower estimates of the
//! true maxima; bounds that use such values are never marked rigorous.

use std::f64::consts::FRAC_PI_3;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{chebyshev_grid, solve_via_dual, THEOREM1_TOL};
use crate::polynomials::{
    gegenbauer_derivative_values, gegenbauer_expand, gegenbauer_values, max_on_interval,
    GegenbauerExpansion, Polynomial,
};
use crate::report::{BoundReport, Certificate, Method};

/// Cap configurations whose constraint violation exceeds this are rejected.
pub const FEASIBILITY_TOL: f64 = 1e-9;

const OUTER_ROUNDS: usize = 100;
const MAX_RHO: f64 = 1e5;
const STALL_STEPS: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub restarts: usize,
    /// Inner descent steps per penalty update.
    pub iterations: usize,
    pub seed: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            restarts: 50,
            iterations: 2000,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MusinConfig {
    pub n: usize,
    pub s: f64,
    pub t0: f64,
    pub mu: usize,
    pub search: SearchParams,
}

impl MusinConfig {
    pub fn new(n: usize, s: f64, t0: f64, mu: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidDimension(n));
        }
        if !(-1.0..1.0).contains(&s) {
            return Err(Error::OutOfRange(s));
        }
        if !(t0 >= -1.0 && t0 < -s) {
            return Err(Error::PreconditionViolated(format!(
                "cap threshold t0 = {t0} must satisfy -1 <= t0 < -s = {}",
                -s
            )));
        }
        Ok(Self {
            n,
            s,
            t0,
            mu,
            search: SearchParams::default(),
        })
    }

    /// Occupancy and threshold used for kissing configurations in
    /// dimensions 3 and 4.
    pub fn kissing_defaults(n: usize) -> Result<Self> {
        match n {
            3 => Self::new(3, 0.5, -0.5907, 4),
            4 => Self::new(4, 0.5, -0.608, 6),
            _ => Err(Error::UnsupportedConfiguration(format!(
                "no default cap parameters for n = {n}"
            ))),
        }
    }

    pub fn with_search(mut self, search: SearchParams) -> Self {
        self.search = search;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Heuristic,
    /// The search found no configuration of this size.
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HValue {
    pub m: usize,
    pub value: Option<f64>,
    pub provenance: Provenance,
}

fn tol_for(f: &Polynomial) -> f64 {
    THEOREM1_TOL * f.max_abs_coeff().max(1.0)
}

/// Checks (B1), (B2), (B3) and returns the Gegenbauer expansion.
pub fn check_conditions(config: &MusinConfig, f: &Polynomial) -> Result<GegenbauerExpansion> {
    if f.is_zero() {
        return Err(Error::PreconditionViolated("zero polynomial".into()));
    }
    let tol = tol_for(f);
    let (witness, value) = max_on_interval(f, config.t0, config.s);
    if value > tol {
        return Err(Error::ConditionB1Violated { witness, value });
    }
    let (witness, value) = max_on_interval(&f.derivative(), -1.0, config.t0);
    if value > tol {
        return Err(Error::ConditionB2Violated { witness, value });
    }
    let expansion = gegenbauer_expand(config.n, f)?;
    if expansion.f0() <= tol {
        return Err(Error::ConditionB3Violated {
            index: 0,
            value: expansion.f0(),
        });
    }
    if let Some((index, value)) = expansion.first_negative(tol) {
        return Err(Error::ConditionB3Violated { index, value });
    }
    Ok(expansion)
}

pub fn h0(f: &Polynomial) -> f64 {
    f.eval(1.0)
}

pub fn h1(f: &Polynomial) -> f64 {
    f.eval(1.0) + f.eval(-1.0)
}

/// Admissible `phi` range for the two-point configuration, or `None` when
/// the cap cannot hold two points 60 degrees apart.
fn h2_range(t0: f64) -> Option<(f64, f64)> {
    let radius = (-t0).acos();
    let lo = (FRAC_PI_3 - radius).max(0.0);
    let hi = radius.min(FRAC_PI_3);
    (lo <= hi).then_some((lo, hi))
}

fn h2_maximand(f: &Polynomial, phi: f64) -> f64 {
    f.eval(1.0) + f.eval(-phi.cos()) + f.eval(-(FRAC_PI_3 - phi).cos())
}

/// `h_2` for `n = 3, s = 1/2` by a dense scan refined with golden-section
/// search to 1e-10 in `phi`.
pub fn h2_closed_form(config: &MusinConfig, f: &Polynomial) -> Result<f64> {
    if config.n != 3 || config.s != 0.5 {
        return Err(Error::UnsupportedConfiguration(format!(
            "closed-form h_2 needs n = 3, s = 1/2; got n = {}, s = {}",
            config.n, config.s
        )));
    }
    let (lo, hi) = h2_range(config.t0).ok_or(Error::InfeasibleCap { m: 2, s: config.s })?;
    let steps = 4096;
    let h = (hi - lo) / steps as f64;
    let (best_i, mut best) = (0..=steps)
        .map(|i| (i, h2_maximand(f, lo + i as f64 * h)))
        .fold(
            (0, f64::NEG_INFINITY),
            |acc, x| if x.1 > acc.1 { x } else { acc },
        );
    if h > 0.0 {
        let (mut a, mut b) = (
            (lo + (best_i as f64 - 1.0) * h).max(lo),
            (lo + (best_i as f64 + 1.0) * h).min(hi),
        );
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
        let (mut f1, mut f2) = (h2_maximand(f, x1), h2_maximand(f, x2));
        while b - a > 1e-10 {
            if f1 < f2 {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = h2_maximand(f, x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = h2_maximand(f, x1);
            }
        }
        best = best.max(f1).max(f2);
    }
    Ok(best)
}

/// Best cap configuration found by the local search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapConfiguration {
    pub value: f64,
    /// `<e_1, y_j>` for each point.
    pub cap_inner_products: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub max_violation: f64,
}

struct Problem<'a> {
    f: &'a Polynomial,
    df: &'a Polynomial,
    n: usize,
    m: usize,
    s: f64,
    t0: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Problem<'_> {
    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.m).flat_map(move |i| (i + 1..self.m).map(move |j| (i, j)))
    }

    fn violation(&self, y: &[Vec<f64>]) -> f64 {
        let pair = self
            .pairs()
            .map(|(i, j)| dot(&y[i], &y[j]) - self.s)
            .fold(0.0f64, f64::max);
        let cap = y.iter().map(|v| v[0] - self.t0).fold(0.0f64, f64::max);
        pair.max(cap)
    }

    fn value(&self, y: &[Vec<f64>]) -> f64 {
        self.f.eval(1.0) + y.iter().map(|v| self.f.eval(v[0])).sum::<f64>()
    }

    /// Augmented Lagrangian of `-value` and its Euclidean gradient.
    fn lagrangian(
        &self,
        y: &[Vec<f64>],
        lam_pair: &[f64],
        lam_cap: &[f64],
        rho: f64,
    ) -> (f64, Vec<Vec<f64>>) {
        let mut phi = -y.iter().map(|v| self.f.eval(v[0])).sum::<f64>();
        let mut grad: Vec<Vec<f64>> = y
            .iter()
            .map(|v| {
                let mut g = vec![0.0; self.n];
                g[0] = -self.df.eval(v[0]);
                g
            })
            .collect();
        let psi = |lam: f64, g: f64| {
            let t = (lam + rho * g).max(0.0);
            ((t * t - lam * lam) / (2.0 * rho), t)
        };
        for (k, (i, j)) in self.pairs().enumerate() {
            let (p, w) = psi(lam_pair[k], dot(&y[i], &y[j]) - self.s);
            phi += p;
            if w > 0.0 {
                for d in 0..self.n {
                    grad[i][d] += w * y[j][d];
                    grad[j][d] += w * y[i][d];
                }
            }
        }
        for (j, v) in y.iter().enumerate() {
            let (p, w) = psi(lam_cap[j], v[0] - self.t0);
            phi += p;
            grad[j][0] += w;
        }
        (phi, grad)
    }

    fn random_start(&self, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
        let radius = (-self.t0).acos();
        (0..self.m)
            .map(|_| {
                let theta = radius * rng.gen::<f64>();
                let mut u: Vec<f64> = (1..self.n).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
                let norm = dot(&u, &u).sqrt().max(1e-300);
                u.iter_mut().for_each(|x| *x /= norm);
                std::iter::once(-theta.cos())
                    .chain(u.into_iter().map(|x| x * theta.sin()))
                    .collect()
            })
            .collect()
    }

    /// One restart: augmented-Lagrangian outer loop around projected
    /// gradient descent on the product of spheres.
    fn solve(&self, mut y: Vec<Vec<f64>>, iterations: usize) -> Vec<Vec<f64>> {
        let npairs = self.m * (self.m.saturating_sub(1)) / 2;
        let mut lam_pair = vec![0.0; npairs];
        let mut lam_cap = vec![0.0; self.m];
        let mut rho = 10.0;
        let mut last_violation = f64::INFINITY;
        for outer in 0..OUTER_ROUNDS {
            let mut step = 1e-2;
            let mut converged = false;
            let (mut phi, mut grad) = self.lagrangian(&y, &lam_pair, &lam_cap, rho);
            let mut previous: Option<(Vec<f64>, Vec<f64>)> = None;
            let mut stalled = 0;
            for _ in 0..iterations {
                let dir: Vec<Vec<f64>> = y
                    .iter()
                    .zip(&grad)
                    .map(|(v, g)| {
                        let radial = dot(g, v);
                        g.iter()
                            .zip(v)
                            .map(|(gi, vi)| -(gi - radial * vi))
                            .collect()
                    })
                    .collect();
                let flat_y: Vec<f64> = y.concat();
                let flat_d: Vec<f64> = dir.concat();
                let dnorm2 = dot(&flat_d, &flat_d);
                if dnorm2 < 1e-20 {
                    converged = true;
                    break;
                }
                // Barzilai-Borwein step from the last move, safeguarded by
                // Armijo backtracking below.
                step = match &previous {
                    Some((py, pd)) => {
                        let sk: Vec<f64> = flat_y.iter().zip(py).map(|(a, b)| a - b).collect();
                        let yk: Vec<f64> = pd.iter().zip(&flat_d).map(|(a, b)| a - b).collect();
                        let sy = dot(&sk, &yk);
                        if sy > 0.0 {
                            (dot(&sk, &sk) / sy).clamp(1e-12, 1e3)
                        } else {
                            step * 2.0
                        }
                    }
                    None => step,
                };
                previous = Some((flat_y, flat_d));
                let mut accepted = false;
                while step > 1e-18 {
                    let trial: Vec<Vec<f64>> = y
                        .iter()
                        .zip(&dir)
                        .map(|(v, d)| {
                            let w: Vec<f64> = v.iter().zip(d).map(|(a, b)| a + step * b).collect();
                            let norm = dot(&w, &w).sqrt();
                            w.into_iter().map(|x| x / norm).collect()
                        })
                        .collect();
                    let (p, g) = self.lagrangian(&trial, &lam_pair, &lam_cap, rho);
                    if p <= phi - 1e-4 * step * dnorm2 {
                        stalled = if phi - p <= 1e-16 * phi.abs().max(1.0) {
                            stalled + 1
                        } else {
                            0
                        };
                        y = trial;
                        phi = p;
                        grad = g;
                        accepted = true;
                        break;
                    }
                    step *= 0.5;
                }
                if !accepted || stalled >= STALL_STEPS {
                    converged = true;
                    break;
                }
            }
            // Residual max(g, -lam/rho) also catches slack constraints that
            // still carry a multiplier.
            let mut violation = 0.0f64;
            for (k, (i, j)) in self.pairs().enumerate() {
                let g = dot(&y[i], &y[j]) - self.s;
                violation = violation.max(g.max(-lam_pair[k] / rho).abs());
                lam_pair[k] = (lam_pair[k] + rho * g).max(0.0);
            }
            for (j, v) in y.iter().enumerate() {
                let g = v[0] - self.t0;
                violation = violation.max(g.max(-lam_cap[j] / rho).abs());
                lam_cap[j] = (lam_cap[j] + rho * g).max(0.0);
            }
            // Multiplier updates stall around 1e-11 in double precision.
            if violation < 1e-11 && outer > 3 && converged {
                break;
            }
            if violation > 1e-10 && violation > 0.25 * last_violation {
                rho = (rho * 4.0).min(MAX_RHO);
            }
            last_violation = violation;
        }
        y
    }
}

/// Multi-start search for the `m`-point cap configuration maximizing
/// `f(1) + sum_j f(<e_1, y_j>)`. Restarts run on scoped threads with seeds
/// drawn in order from the configured seed, and the best feasible result
/// wins (earliest restart on ties), so output depends only on the inputs.
pub fn h_m_search(config: &MusinConfig, f: &Polynomial, m: usize) -> Result<CapConfiguration> {
    if m == 0 {
        return Ok(CapConfiguration {
            value: h0(f),
            cap_inner_products: Vec::new(),
            vectors: Vec::new(),
            max_violation: 0.0,
        });
    }
    let df = f.derivative();
    let problem = Problem {
        f,
        df: &df,
        n: config.n,
        m,
        s: config.s,
        t0: config.t0,
    };
    let restarts = config.search.restarts.max(1);
    let mut seeder = ChaCha8Rng::seed_from_u64(config.search.seed ^ (m as u64) << 32);
    let seeds: Vec<u64> = (0..restarts).map(|_| seeder.gen()).collect();
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .clamp(1, 16);
    let chunk = restarts.div_ceil(workers);
    let results: Vec<Vec<Vec<f64>>> = std::thread::scope(|scope| {
        let problem = &problem;
        let handles: Vec<_> = seeds
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|&seed| {
                            let mut rng = ChaCha8Rng::seed_from_u64(seed);
                            let start = problem.random_start(&mut rng);
                            problem.solve(start, config.search.iterations)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("cap search worker panicked"))
            .collect()
    });
    let mut best: Option<CapConfiguration> = None;
    for y in results {
        let violation = problem.violation(&y);
        if violation > FEASIBILITY_TOL {
            continue;
        }
        let value = problem.value(&y);
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(CapConfiguration {
                value,
                cap_inner_products: y.iter().map(|v| v[0]).collect(),
                vectors: y,
                max_violation: violation,
            });
        }
    }
    best.ok_or(Error::InfeasibleCap { m, s: config.s })
}

/// `h_m` with its provenance: closed forms for `m <= 1` (and `m = 2` when
/// `n = 3, s = 1/2`), the local search otherwise.
pub fn h_m_estimate(config: &MusinConfig, f: &Polynomial, m: usize) -> Result<HValue> {
    let closed = |value| {
        Ok(HValue {
            m,
            value: Some(value),
            provenance: Provenance::ClosedForm,
        })
    };
    match m {
        0 => closed(h0(f)),
        1 => closed(h1(f)),
        2 if config.n == 3 && config.s == 0.5 => closed(h2_closed_form(config, f)?),
        _ => Ok(HValue {
            m,
            value: Some(h_m_search(config, f, m)?.value),
            provenance: Provenance::Heuristic,
        }),
    }
}

/// `max(h_0, ..., h_mu) / f_0` after checking (B1)-(B3). Sizes the search
/// cannot realize are recorded as infeasible and skipped.
pub fn musin_bound(config: &MusinConfig, f: &Polynomial) -> Result<BoundReport> {
    let expansion = check_conditions(config, f)?;
    let mut h = Vec::with_capacity(config.mu + 1);
    for m in 0..=config.mu {
        match h_m_estimate(config, f, m) {
            Ok(v) => h.push(v),
            Err(Error::InfeasibleCap { .. }) => h.push(HValue {
                m,
                value: None,
                provenance: Provenance::Infeasible,
            }),
            Err(e) => return Err(e),
        }
    }
    let best = h
        .iter()
        .filter_map(|v| v.value)
        .fold(f64::NEG_INFINITY, f64::max);
    let rigorous = h.iter().all(|v| v.provenance == Provenance::ClosedForm);
    let f0 = expansion.f0();
    Ok(BoundReport::cardinality(
        config.n,
        config.s,
        Method::Musin,
        best / f0,
        rigorous,
        Certificate::Musin {
            t0: config.t0,
            mu: config.mu,
            f0,
            h,
            polynomial: f.coeffs().to_vec(),
        },
    ))
}

/// Cutting-plane search for a polynomial with a small cap-refined bound.
///
/// With `f_0 = 1` fixed the LP minimizes `z` over `f_1..f_degree >= 0`
/// subject to (B1) on a grid of `[t0, s]`, (B2) as `f' <= -1e-6` on a grid of
/// `[-1, t0]`, and `f(1) + sum_j f(tau_j) <= z` for every cap configuration
/// `tau` collected so far. After each solve the best configurations for the
/// current `f` are added as new cuts, until none exceeds `z`. The result is
/// lifted into (B1) on the continuum like the plain LP search and then
/// evaluated with [`musin_bound`].
pub fn musin_polynomial_search(
    config: &MusinConfig,
    degree: usize,
    grid_size: usize,
) -> Result<(Polynomial, BoundReport)> {
    if !(3..=30).contains(&degree) {
        return Err(Error::PreconditionViolated(format!(
            "degree {degree} outside 3..=30"
        )));
    }
    if grid_size < 10 * degree {
        return Err(Error::PreconditionViolated(format!(
            "grid_size {grid_size} below 10 * degree"
        )));
    }
    let n = config.n;
    let vars = degree + 1;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    for t in chebyshev_grid(config.t0, config.s, grid_size / 2) {
        let mut row = gegenbauer_values(n, degree, t)[1..].to_vec();
        row.push(0.0);
        rows.push(row);
        rhs.push(-1.0);
    }
    for t in chebyshev_grid(-1.0, config.t0, grid_size / 2) {
        let mut row = gegenbauer_derivative_values(n, degree, t)[1..].to_vec();
        row.push(0.0);
        rows.push(row);
        rhs.push(-1e-6);
    }
    let add_cut = |rows: &mut Vec<Vec<f64>>, rhs: &mut Vec<f64>, taus: &[f64]| {
        let mut row = gegenbauer_values(n, degree, 1.0)[1..].to_vec();
        for &t in taus {
            for (r, p) in row.iter_mut().zip(&gegenbauer_values(n, degree, t)[1..]) {
                *r += p;
            }
        }
        row.push(-1.0);
        rows.push(row);
        rhs.push(-(1.0 + taus.len() as f64));
    };
    add_cut(&mut rows, &mut rhs, &[]);
    add_cut(&mut rows, &mut rhs, &[-1.0]);

    let mut cost = vec![0.0; vars];
    cost[degree] = 1.0;
    let quick = config.with_search(SearchParams {
        restarts: config.search.restarts.clamp(1, 8),
        ..config.search
    });
    let mut f = Polynomial::zero();
    let mut converged = false;
    for _round in 0..60 {
        let (x, z) = solve_via_dual(&cost, &rows, &rhs)?;
        let mut coeffs = vec![1.0];
        coeffs.extend_from_slice(&x[..degree]);
        f = GegenbauerExpansion { n, coeffs }.to_polynomial();
        let mut new_cuts = Vec::new();
        for m in 2..=config.mu {
            let taus = if m == 2 && n == 3 && config.s == 0.5 {
                h2_argmax(config, &f)
            } else {
                h_m_search(&quick, &f, m).ok().map(|c| c.cap_inner_products)
            };
            if let Some(taus) = taus {
                let value = f.eval(1.0) + taus.iter().map(|&t| f.eval(t)).sum::<f64>();
                if value > z + 1e-9 * z.abs().max(1.0) {
                    new_cuts.push(taus);
                }
            }
        }
        if new_cuts.is_empty() {
            converged = true;
            break;
        }
        for taus in new_cuts {
            add_cut(&mut rows, &mut rhs, &taus);
        }
    }
    if !converged {
        return Err(Error::MaxIterationsExceeded(60));
    }
    let (_, excursion) = max_on_interval(&f, config.t0, config.s);
    let shift = excursion.max(0.0) + 0.5 * tol_for(&f);
    let lifted = &f - &Polynomial::constant(shift);
    let report = musin_bound(config, &lifted)
        .map_err(|e| Error::PostVerificationFailed(format!("{e}; increase grid_size")))?;
    Ok((lifted, report))
}

fn h2_argmax(config: &MusinConfig, f: &Polynomial) -> Option<Vec<f64>> {
    let (lo, hi) = h2_range(config.t0)?;
    let steps = 4096;
    let phi = (0..=steps)
        .map(|i| lo + (hi - lo) * i as f64 / steps as f64)
        .max_by(|a, b| h2_maximand(f, *a).total_cmp(&h2_maximand(f, *b)))?;
    Some(vec![-phi.cos(), -(FRAC_PI_3 - phi).cos()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg3() -> MusinConfig {
        MusinConfig::kissing_defaults(3).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(MusinConfig::new(3, 0.5, -0.4, 4).is_err());
        assert!(MusinConfig::new(2, 0.5, -0.6, 4).is_err());
        assert!(MusinConfig::new(3, 0.5, -1.1, 4).is_err());
    }

    #[test]
    fn h0_h1_and_constant_h2() {
        let f = Polynomial::constant(2.0);
        assert_eq!(h0(&f), 2.0);
        assert_eq!(h1(&f), 4.0);
        assert_eq!(h2_closed_form(&cfg3(), &f).unwrap(), 6.0);
    }

    #[test]
    fn h2_needs_three_dimensions() {
        let c = MusinConfig::new(4, 0.5, -0.6, 6).unwrap();
        assert!(matches!(
            h2_closed_form(&c, &Polynomial::constant(1.0)),
            Err(Error::UnsupportedConfiguration(_))
        ));
    }

    #[test]
    fn b_conditions_reject_counterexamples() {
        let c = cfg3();
        // increasing everywhere
        let up = Polynomial::new(vec![-5.0, 1.0]);
        assert!(matches!(
            check_conditions(&c, &up),
            Err(Error::ConditionB2Violated { .. })
        ));
        // positive in the middle of [t0, s]
        let mid = 0.5 * (c.t0 + c.s);
        let bump = Polynomial::new(vec![1.0 - mid * mid, 2.0 * mid, -1.0]);
        assert!(matches!(
            check_conditions(&c, &bump),
            Err(Error::ConditionB1Violated { .. })
        ));
    }

    #[test]
    fn too_many_points_is_infeasible() {
        let c = cfg3().with_search(SearchParams {
            restarts: 4,
            iterations: 300,
            seed: 1,
        });
        let f = Polynomial::new(vec![0.0, -1.0]);
        assert!(matches!(
            h_m_search(&c, &f, 9),
            Err(Error::InfeasibleCap { m: 9, .. })
        ));
    }
}
