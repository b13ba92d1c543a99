//! Levenshtein's universal bound `L_m(n, s)` and its extremal polynomials.
//!
//! The interval `[-1, 1)` is cut at the greatest zeros `t_k^{1,0}` and
//! `t_k^{1,1}` of the adjacent Jacobi polynomials. On each piece `I_m` the
//! bound is a closed form in Gegenbauer values at `s`, and the polynomial
//! `f_m^{(n,s)}` built from the adjacent reproducing kernel certifies it
//! through the Delsarte conditions.
//!
//! Below `t_1^{1,0} = -1/n` the degree-one polynomial `t - s` is optimal and
//! gives `1 - 1/s`; that region is labelled `m = 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::verify_theorem1;
use crate::polynomials::{
    adjacent_greatest_zero, gegenbauer_values, jacobi_family, jacobi_values, JacobiParams,
    Polynomial,
};
use crate::report::{BoundReport, Certificate, Method};

/// Endpoint matching tolerance: inputs this close to a bracket endpoint are
/// treated as sitting on it.
const TIE_TOL: f64 = 1e-12;

const MAX_K: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalIndex {
    pub m: usize,
    pub lo: f64,
    pub hi: f64,
}

fn check_inputs(n: usize, s: f64) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    if !(-1.0..1.0).contains(&s) {
        return Err(Error::OutOfRange(s));
    }
    Ok(())
}

/// Returns the `m` with `s` in `I_m`. Shared endpoints go to the smaller `m`.
pub fn interval_index(n: usize, s: f64) -> Result<IntervalIndex> {
    check_inputs(n, s)?;
    let t10 = |k| adjacent_greatest_zero(n, 1, 0, k);
    let t11 = |k| adjacent_greatest_zero(n, 1, 1, k);

    let mut a = t10(1)?;
    if s < a - TIE_TOL {
        return Ok(IntervalIndex {
            m: 0,
            lo: -1.0,
            hi: a,
        });
    }
    for k in 1..MAX_K {
        let b = t11(k)?;
        if s <= b + TIE_TOL {
            return Ok(IntervalIndex {
                m: 2 * k,
                lo: a,
                hi: b,
            });
        }
        let c = t10(k + 1)?;
        if s <= c + TIE_TOL {
            return Ok(IntervalIndex {
                m: 2 * k + 1,
                lo: b,
                hi: c,
            });
        }
        a = c;
    }
    Err(Error::OutOfRange(s))
}

fn binomial(top: usize, bottom: usize) -> f64 {
    (0..bottom).fold(1.0, |acc, i| acc * (top - i) as f64 / (i + 1) as f64)
}

/// Closed form of `L_m(n, s)`; `m = 0` gives `1 - 1/s`.
pub fn levenshtein_closed_form(n: usize, m: usize, s: f64) -> f64 {
    let nf = n as f64;
    if m == 0 {
        return 1.0 - 1.0 / s;
    }
    if m % 2 == 1 {
        let k = m.div_ceil(2);
        let p = gegenbauer_values(n, k, s);
        let kf = k as f64;
        binomial(k + n - 3, k - 1)
            * ((2.0 * kf + nf - 3.0) / (nf - 1.0) - (p[k - 1] - p[k]) / ((1.0 - s) * p[k]))
    } else {
        let k = m / 2;
        let p = gegenbauer_values(n, k + 1, s);
        let kf = k as f64;
        binomial(k + n - 2, k)
            * ((2.0 * kf + nf - 1.0) / (nf - 1.0)
                - (1.0 + s) * (p[k] - p[k + 1]) / ((1.0 - s) * (p[k] + p[k + 1])))
    }
}

fn gegenbauer_values_exact(n: usize, kmax: usize, s: &BigRational) -> Vec<BigRational> {
    let n = BigInt::from(n);
    let mut v = vec![BigRational::one()];
    if kmax >= 1 {
        v.push(s.clone());
    }
    for k in 1..kmax {
        let kk = BigInt::from(k);
        let num = BigRational::from_integer(BigInt::from(2) * &kk + &n - 2) * s * &v[k]
            - BigRational::from_integer(kk.clone()) * &v[k - 1];
        v.push(num / BigRational::from_integer(kk + &n - 2));
    }
    v
}

fn binomial_exact(top: usize, bottom: usize) -> BigRational {
    (0..bottom).fold(BigRational::one(), |acc, i| {
        acc * BigRational::new(BigInt::from(top - i), BigInt::from(i + 1))
    })
}

/// Exact closed form at a rational `s`. `None` when a denominator vanishes.
pub fn levenshtein_closed_form_exact(n: usize, m: usize, s: &BigRational) -> Option<BigRational> {
    let one = BigRational::one();
    let nn = BigRational::from_integer(BigInt::from(n));
    if m == 0 {
        return (!s.is_zero()).then(|| &one - s.recip());
    }
    if m % 2 == 1 {
        let k = m.div_ceil(2);
        let p = gegenbauer_values_exact(n, k, s);
        let denom = (&one - s) * &p[k];
        if denom.is_zero() {
            return None;
        }
        let kk = BigRational::from_integer(BigInt::from(k));
        let lead = (BigRational::from_integer(BigInt::from(2)) * &kk + &nn - BigInt::from(3))
            / (&nn - &one);
        Some(binomial_exact(k + n - 3, k - 1) * (lead - (&p[k - 1] - &p[k]) / denom))
    } else {
        let k = m / 2;
        let p = gegenbauer_values_exact(n, k + 1, s);
        let denom = (&one - s) * (&p[k] + &p[k + 1]);
        if denom.is_zero() {
            return None;
        }
        let kk = BigRational::from_integer(BigInt::from(k));
        let lead = (BigRational::from_integer(BigInt::from(2)) * &kk + &nn - &one) / (&nn - &one);
        Some(binomial_exact(k + n - 2, k) * (lead - (&one + s) * (&p[k] - &p[k + 1]) / denom))
    }
}

/// Levenshtein bound at `(n, s)`. The value is evaluated exactly at the
/// dyadic rational `s` when possible; the bound is marked rigorous once the
/// extremal polynomial passes the Delsarte check and reproduces the value.
pub fn levenshtein_bound(n: usize, s: f64) -> Result<BoundReport> {
    let index = interval_index(n, s)?;
    let exact =
        BigRational::from_float(s).and_then(|sr| levenshtein_closed_form_exact(n, index.m, &sr));
    let value = match &exact {
        Some(q) => crate::polynomials::rational_to_f64(q),
        None => levenshtein_closed_form(n, index.m, s),
    };
    let rigorous = levenshtein_polynomial(n, s)
        .and_then(|f| verify_theorem1(n, s, &f))
        .map(|r| ((r.value - value) / value).abs() <= 1e-8)
        .unwrap_or(false);
    Ok(BoundReport::cardinality(
        n,
        s,
        Method::Levenshtein,
        value,
        rigorous,
        Certificate::Levenshtein {
            m: index.m,
            interval: [index.lo, index.hi],
            exact: exact.map(|q| q.to_string()),
        },
    ))
}

/// Reproducing kernel `sum_{i<=deg} P_i(t) P_i(s) / h_i` of an adjacent
/// Jacobi family, as a polynomial in `t`.
pub fn adjacent_kernel(params: JacobiParams, deg: usize, s: f64) -> Polynomial {
    let family = jacobi_family(params, deg);
    let at_s = jacobi_values(params, deg, s);
    let norms = params.relative_norms(deg);
    family
        .iter()
        .zip(at_s.iter().zip(&norms))
        .fold(Polynomial::zero(), |acc, (p, (ps, h))| {
            &acc + &p.scale(ps / h)
        })
}

/// The extremal polynomial `f_m^{(n,s)}`, scaled to `f_0 = 1`.
pub fn levenshtein_polynomial(n: usize, s: f64) -> Result<Polynomial> {
    let index = interval_index(n, s)?;
    let m = index.m;
    let t_minus_s = Polynomial::linear_factor(s);
    let f = if m <= 1 {
        t_minus_s
    } else if m % 2 == 1 {
        let k = m.div_ceil(2);
        let kernel = adjacent_kernel(JacobiParams::new(n, 1, 0)?, k - 1, s);
        &t_minus_s * &(&kernel * &kernel)
    } else {
        let k = m / 2;
        let kernel = adjacent_kernel(JacobiParams::new(n, 1, 1)?, k - 1, s);
        &(&Polynomial::linear_factor(-1.0) * &t_minus_s) * &(&kernel * &kernel)
    };
    let expansion = crate::polynomials::gegenbauer_expand(n, &f)?;
    let f0 = expansion.f0();
    let f = f.scale(1.0 / f0);
    let from_polynomial = f.eval(1.0);
    let closed_form = levenshtein_closed_form(n, m, s);
    let rel = ((from_polynomial - closed_form) / closed_form).abs();
    if rel.is_nan() || rel > 1e-8 {
        return Err(Error::KernelConstructionFailure {
            from_polynomial,
            closed_form,
        });
    }
    Ok(f)
}
