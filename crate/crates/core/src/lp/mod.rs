//! Delsarte linear-programming bounds: certificate verification and the
//! discretized search for improving polynomials.

mod simplex;

pub use simplex::{
    simplex_solve, simplex_solve_with_limit, Constraint, LpProblem, LpSolution, Relation,
    DEFAULT_MAX_ITERATIONS, PIVOT_TOL,
};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polynomials::{
    gegenbauer_expand, gegenbauer_expand_exact, gegenbauer_values, max_on_interval,
    rational_to_f64, ExactExpansion, GegenbauerExpansion, Polynomial, RationalPolynomial,
};
use crate::report::{BoundReport, Certificate, Method, PolynomialCertificate};

/// Absolute tolerance for (A1) and (A2), scaled by `max(1, max |coeff|)`.
pub const THEOREM1_TOL: f64 = 1e-12;

pub const DEFAULT_GRID: usize = 4000;

pub const EXCHANGE_ROUNDS: usize = 10;

fn check_ns(n: usize, s: f64) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    if !(-1.0..1.0).contains(&s) {
        return Err(Error::OutOfRange(s));
    }
    Ok(())
}

/// Checks the Delsarte conditions for `p` at `(n, s)`:
/// (A1) `p(t) <= 0` on `[-1, s]`, (A2) `f_0 > 0` and `f_k >= 0`.
/// On success the bound `A(n, s) <= p(1) / f_0` is returned.
pub fn verify_theorem1(n: usize, s: f64, p: &Polynomial) -> Result<BoundReport> {
    check_ns(n, s)?;
    if p.is_zero() {
        return Err(Error::PreconditionViolated("zero polynomial".into()));
    }
    let tol = THEOREM1_TOL * p.max_abs_coeff().max(1.0);
    let (witness, value) = max_on_interval(p, -1.0, s);
    if value > tol {
        return Err(Error::ConditionA1Violated { witness, value });
    }
    let expansion = gegenbauer_expand(n, p)?;
    check_a2(&expansion, tol)?;
    let bound = p.eval(1.0) / expansion.f0();
    Ok(polynomial_report(n, s, p, &expansion, bound, Method::Lp))
}

fn check_a2(expansion: &GegenbauerExpansion, tol: f64) -> Result<()> {
    let f0 = expansion.f0();
    if f0 <= tol {
        return Err(Error::ConditionA2Violated {
            index: 0,
            value: f0,
        });
    }
    if let Some((index, value)) = expansion.first_negative(tol) {
        return Err(Error::ConditionA2Violated { index, value });
    }
    Ok(())
}

fn polynomial_report(
    n: usize,
    s: f64,
    p: &Polynomial,
    expansion: &GegenbauerExpansion,
    bound: f64,
    method: Method,
) -> BoundReport {
    BoundReport::cardinality(
        n,
        s,
        method,
        bound,
        true,
        Certificate::Polynomial(PolynomialCertificate {
            n,
            s,
            degree: p.degree(),
            monomial_coeffs: p.coeffs().to_vec(),
            gegenbauer_coeffs: expansion.coeffs.clone(),
            bound,
            rigorous: true,
        }),
    )
}

/// Outcome of an exact Delsarte check.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactVerification {
    pub n: usize,
    pub s: BigRational,
    pub bound: BigRational,
    pub expansion: ExactExpansion,
    pub polynomial: RationalPolynomial,
}

impl ExactVerification {
    pub fn to_report(&self) -> BoundReport {
        let s = rational_to_f64(&self.s);
        let value = rational_to_f64(&self.bound);
        BoundReport::cardinality(
            self.n,
            s,
            Method::Lp,
            value,
            true,
            Certificate::Polynomial(PolynomialCertificate {
                n: self.n,
                s,
                degree: self.polynomial.degree(),
                monomial_coeffs: self.polynomial.to_polynomial().coeffs().to_vec(),
                gegenbauer_coeffs: self.expansion.to_f64(),
                bound: value,
                rigorous: true,
            }),
        )
    }
}

/// The Delsarte check in exact rational arithmetic: (A1) is decided with
/// Sturm sequences and (A2) on exact expansion coefficients, so there is no
/// tolerance anywhere.
pub fn verify_theorem1_exact(
    n: usize,
    s: &BigRational,
    p: &RationalPolynomial,
) -> Result<ExactVerification> {
    let sf = rational_to_f64(s);
    check_ns(n, sf)?;
    if p.is_zero() {
        return Err(Error::PreconditionViolated("zero polynomial".into()));
    }
    let minus_one = -BigRational::from_integer(1.into());
    if let Err(w) = p.nonpositive_on(&minus_one, s) {
        return Err(Error::ConditionA1Violated {
            witness: rational_to_f64(&w),
            value: rational_to_f64(&p.eval(&w)),
        });
    }
    let expansion = gegenbauer_expand_exact(n, p)?;
    let f0 = expansion.f0();
    if !f0.is_positive() {
        return Err(Error::ConditionA2Violated {
            index: 0,
            value: rational_to_f64(&f0),
        });
    }
    if let Some((index, c)) = expansion
        .coeffs
        .iter()
        .enumerate()
        .find(|(_, c)| c.is_negative())
    {
        return Err(Error::ConditionA2Violated {
            index,
            value: rational_to_f64(c),
        });
    }
    let one = BigRational::from_integer(1.into());
    Ok(ExactVerification {
        n,
        s: s.clone(),
        bound: p.eval(&one) / f0,
        expansion,
        polynomial: p.clone(),
    })
}

/// Degree used by the LP search when none is given.
pub fn default_lp_degree(n: usize) -> usize {
    match n {
        0..=4 => 9,
        5..=12 => 11,
        _ => 13,
    }
}

/// `size` Chebyshev extremal points mapped onto `[a, b]`, endpoints included,
/// in increasing order.
pub fn chebyshev_grid(a: f64, b: f64, size: usize) -> Vec<f64> {
    if size == 1 {
        return vec![0.5 * (a + b)];
    }
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let mut grid: Vec<f64> = (0..size)
        .map(|j| {
            let theta = std::f64::consts::PI * (size - 1 - j) as f64 / (size - 1) as f64;
            mid + half * theta.cos()
        })
        .collect();
    grid[0] = a;
    grid[size - 1] = b;
    grid
}

/// Solves `min c.x` s.t. `A x <= b`, `x >= 0` for `c >= 0` through its dual
/// `max (-b).y` s.t. `(-A)^T y <= c`, `y >= 0`, whose slack basis is
/// feasible from the start. The primal optimum is read off the dual's
/// constraint multipliers. Returns `(x, min c.x)`.
pub fn solve_via_dual(c: &[f64], a_rows: &[Vec<f64>], b: &[f64]) -> Result<(Vec<f64>, f64)> {
    let nvars = c.len();
    let ncons = a_rows.len();
    let mut dual = LpProblem::new(b.to_vec());
    for (k, &ck) in c.iter().enumerate() {
        if ck < 0.0 {
            return Err(Error::PreconditionViolated(
                "dual route needs a nonnegative cost vector".into(),
            ));
        }
        let row = (0..ncons).map(|j| -a_rows[j][k]).collect();
        dual.add(row, Relation::Le, ck);
    }
    // `min b.y` is `-max (-b).y`; the primal optimum equals `max (-b).y`.
    let sol = match simplex_solve(&dual) {
        Ok(sol) => sol,
        Err(Error::UnboundedLp) => return Err(Error::InfeasibleLp),
        Err(e) => return Err(e),
    };
    let x: Vec<f64> = sol.duals.iter().map(|d| (-d).max(0.0)).collect();
    debug_assert_eq!(x.len(), nvars);
    Ok((x, -sol.objective))
}

/// Discretized LP search: fix `f_0 = 1`, minimize `f(1) = 1 + sum f_k` over
/// `f_k >= 0` with `f(t_j) <= 0` on a Chebyshev grid of `[-1, s]`, then lift
/// the grid solution to a continuum certificate by subtracting the largest
/// positive excursion on `[-1, s]` from the constant term and re-running the
/// Delsarte check. Before lifting, the points of positive local maxima are
/// added to the grid and the LP re-solved, up to [`EXCHANGE_ROUNDS`] times.
pub fn lp_search(n: usize, s: f64, degree: usize, grid_size: usize) -> Result<BoundReport> {
    check_ns(n, s)?;
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
    let grid = chebyshev_grid(-1.0, s, grid_size);
    let mut rows: Vec<Vec<f64>> = grid
        .iter()
        .map(|&t| gegenbauer_values(n, degree, t)[1..].to_vec())
        .collect();
    let mut p;
    let mut excursion;
    let mut round = 0;
    loop {
        let (x, _) = solve_via_dual(&vec![1.0; degree], &rows, &vec![-1.0; rows.len()])?;
        let mut coeffs = Vec::with_capacity(degree + 1);
        coeffs.push(1.0);
        coeffs.extend_from_slice(&x);
        p = GegenbauerExpansion { n, coeffs }.to_polynomial();
        let (witness, value) = max_on_interval(&p, -1.0, s);
        excursion = value;
        round += 1;
        if excursion <= THEOREM1_TOL * p.max_abs_coeff().max(1.0) || round > EXCHANGE_ROUNDS {
            break;
        }
        let mut points = positive_local_maxima(&p, -1.0, s, 8 * grid_size);
        points.push(witness);
        for t in points {
            rows.push(gegenbauer_values(n, degree, t)[1..].to_vec());
        }
    }
    let shift = excursion.max(0.0) + THEOREM1_TOL * p.max_abs_coeff().max(1.0) * 0.5;
    if shift >= 1.0 {
        return Err(Error::PostVerificationFailed(format!(
            "excursion {excursion} swamps f_0; increase grid_size"
        )));
    }
    let lifted = &p - &Polynomial::constant(shift);
    let mut report = verify_theorem1(n, s, &lifted)
        .map_err(|e| Error::PostVerificationFailed(format!("{e}; increase grid_size")))?;
    report.method = Method::Lp;
    Ok(report)
}

/// Interior local maxima of `p` on `[a, b]` with a positive value, located
/// by bisection on sign changes of `p'` over `samples` equal steps.
fn positive_local_maxima(p: &Polynomial, a: f64, b: f64, samples: usize) -> Vec<f64> {
    let dp = p.derivative();
    let step = (b - a) / samples as f64;
    let mut out = Vec::new();
    let mut prev = dp.eval(a);
    for i in 1..=samples {
        let x = a + step * i as f64;
        let cur = dp.eval(x);
        if prev > 0.0 && cur <= 0.0 {
            let (mut lo, mut hi) = (x - step, x);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if dp.eval(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let t = 0.5 * (lo + hi);
            if p.eval(t) > 0.0 {
                out.push(t);
            }
        }
        prev = cur;
    }
    out
}

/// Runs [`lp_search`] for each degree on scoped threads and keeps the
/// smallest verified bound (lowest degree on ties).
pub fn lp_search_best(
    n: usize,
    s: f64,
    degrees: impl IntoIterator<Item = usize>,
    grid_size: usize,
) -> Result<BoundReport> {
    let degrees: Vec<usize> = degrees.into_iter().collect();
    let results: Vec<Result<BoundReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = degrees
            .iter()
            .map(|&d| scope.spawn(move || lp_search(n, s, d, grid_size)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("lp worker panicked"))
            .collect()
    });
    let mut best: Option<BoundReport> = None;
    let mut last_err = None;
    for r in results {
        match r {
            Ok(rep) => {
                if best.as_ref().is_none_or(|b| rep.value < b.value) {
                    best = Some(rep);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.unwrap_or(Error::InfeasibleLp))
}

/// True when every entry of an exact expansion is nonnegative.
pub fn exact_coefficients_nonnegative(e: &ExactExpansion) -> bool {
    e.coeffs.iter().all(|c| !c.is_negative()) && !e.f0().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_polynomial_fails_a1() {
        let p = Polynomial::new(vec![0.0, 1.0]);
        match verify_theorem1(3, 0.5, &p) {
            Err(Error::ConditionA1Violated { witness, value }) => {
                assert!(witness > 0.0 && value > 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negative_coefficient_fails_a2() {
        // (t - s) has f_0 = -s < 0 for s > 0
        let p = Polynomial::linear_factor(0.3);
        assert!(matches!(
            verify_theorem1(4, 0.3, &p),
            Err(Error::ConditionA2Violated { index: 0, .. })
        ));
    }

    #[test]
    fn chebyshev_grid_is_sorted_with_endpoints() {
        let g = chebyshev_grid(-1.0, 0.5, 101);
        assert_eq!(g[0], -1.0);
        assert_eq!(g[100], 0.5);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn lp_search_validates_parameters() {
        assert!(matches!(
            lp_search(3, 0.5, 2, 100),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            lp_search(3, 0.5, 9, 50),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn small_lp_search_is_verified() {
        let r = lp_search(3, 0.5, 9, 1000).unwrap();
        assert!(r.rigorous);
        assert!(r.value < 13.2, "{}", r.value);
    }
}
