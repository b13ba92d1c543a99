//! Dense real polynomials, the Gegenbauer family `P_k^{(n)}`, the adjacent
//! Jacobi families and expansion into the Gegenbauer basis.
//!
//! Polynomials are stored in the monomial basis, coefficient `i` multiplying
//! `t^i`. Gegenbauer polynomials are normalized so that `P_k^{(n)}(1) = 1`.

mod rational;
mod roots;

pub use rational::{
    gegenbauer_exact, gegenbauer_expand_exact, parse_rational, to_f64 as rational_to_f64,
    ExactExpansion, RationalPolynomial,
};
pub use roots::{greatest_zero, max_on_interval, sign_change_roots, SCAN_POINTS};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending monomial coefficients, dropping
    /// trailing zeros.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `t - root`
    pub fn linear_factor(root: f64) -> Self {
        Self::new(vec![-root, 1.0])
    }

    /// Monic polynomial with the given roots (repeated roots listed repeatedly).
    pub fn from_roots(roots: &[f64]) -> Self {
        roots.iter().fold(Self::constant(1.0), |acc, &r| {
            &acc * &Self::linear_factor(r)
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the last nonzero coefficient; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading_coeff(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn powi(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1.0), |acc, _| &acc * self)
    }

    /// Synthetic division by `t - root`, returning `(quotient, remainder)`.
    pub fn div_linear(&self, root: f64) -> (Self, f64) {
        if self.coeffs.is_empty() {
            return (Self::zero(), 0.0);
        }
        let d = self.coeffs.len() - 1;
        let mut q = vec![0.0; d];
        let mut carry = 0.0;
        for i in (0..=d).rev() {
            let v = self.coeffs[i] + carry * root;
            if i == 0 {
                return (Self::new(q), v);
            }
            q[i - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// Largest absolute coefficient, used as a scale for tolerances.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0.0 { '-' } else { '+' })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c.abs())?,
                1 => write!(f, "{}*t", c.abs())?,
                _ => write!(f, "{}*t^{}", c.abs(), i)?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..len)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(0.0)
                        + rhs.coeffs.get(i).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::InvalidDimension(n))
    } else {
        Ok(())
    }
}

/// The Gegenbauer polynomial `P_k^{(n)}` normalized to `P_k(1) = 1`.
pub fn gegenbauer(n: usize, k: usize) -> Result<Polynomial> {
    Ok(gegenbauer_family(n, k)?.pop().expect("family is nonempty"))
}

/// `P_0^{(n)}, ..., P_kmax^{(n)}` from the three-term recurrence
/// `(k+n-2) P_{k+1} = (2k+n-2) t P_k - k P_{k-1}`.
pub fn gegenbauer_family(n: usize, kmax: usize) -> Result<Vec<Polynomial>> {
    check_dimension(n)?;
    let t = Polynomial::new(vec![0.0, 1.0]);
    let mut family = vec![Polynomial::constant(1.0)];
    if kmax >= 1 {
        family.push(t.clone());
    }
    for k in 1..kmax {
        let nf = n as f64;
        let kf = k as f64;
        let next = &(&t * &family[k]).scale((2.0 * kf + nf - 2.0) / (kf + nf - 2.0))
            - &family[k - 1].scale(kf / (kf + nf - 2.0));
        family.push(next);
    }
    Ok(family)
}

/// Values `P_0^{(n)}(t), ..., P_kmax^{(n)}(t)` by running the recurrence on
/// numbers. More accurate than evaluating monomial coefficients.
pub fn gegenbauer_values(n: usize, kmax: usize, t: f64) -> Vec<f64> {
    let nf = n as f64;
    let mut values = Vec::with_capacity(kmax + 1);
    values.push(1.0);
    if kmax >= 1 {
        values.push(t);
    }
    for k in 1..kmax {
        let kf = k as f64;
        let next = ((2.0 * kf + nf - 2.0) * t * values[k] - kf * values[k - 1]) / (kf + nf - 2.0);
        values.push(next);
    }
    values
}

/// Derivatives `P_0'(t), ..., P_kmax'(t)` from the differentiated recurrence.
pub fn gegenbauer_derivative_values(n: usize, kmax: usize, t: f64) -> Vec<f64> {
    let nf = n as f64;
    let p = gegenbauer_values(n, kmax, t);
    let mut d = Vec::with_capacity(kmax + 1);
    d.push(0.0);
    if kmax >= 1 {
        d.push(1.0);
    }
    for k in 1..kmax {
        let kf = k as f64;
        let next = ((2.0 * kf + nf - 2.0) * (p[k] + t * d[k]) - kf * d[k - 1]) / (kf + nf - 2.0);
        d.push(next);
    }
    d
}

/// Coefficients `f_0..f_m` of a polynomial in the basis `P_k^{(n)}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GegenbauerExpansion {
    pub n: usize,
    pub coeffs: Vec<f64>,
}

impl GegenbauerExpansion {
    pub fn f0(&self) -> f64 {
        self.coeffs.first().copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Evaluates `sum f_k P_k^{(n)}(t)` without going through monomials.
    pub fn eval(&self, t: f64) -> f64 {
        if self.coeffs.is_empty() {
            return 0.0;
        }
        gegenbauer_values(self.n, self.degree(), t)
            .iter()
            .zip(&self.coeffs)
            .map(|(p, f)| p * f)
            .sum()
    }

    pub fn eval_derivative(&self, t: f64) -> f64 {
        if self.coeffs.is_empty() {
            return 0.0;
        }
        gegenbauer_derivative_values(self.n, self.degree(), t)
            .iter()
            .zip(&self.coeffs)
            .map(|(p, f)| p * f)
            .sum()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let family = gegenbauer_family(self.n, self.degree()).expect("expansion has valid n");
        self.coeffs
            .iter()
            .zip(&family)
            .fold(Polynomial::zero(), |acc, (&f, p)| &acc + &p.scale(f))
    }

    /// Index and value of the most negative coefficient below `-tol`, if any.
    pub fn first_negative(&self, tol: f64) -> Option<(usize, f64)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, &f)| f < -tol)
            .map(|(k, &f)| (k, f))
    }
}

/// Expands `p` in the Gegenbauer basis by peeling off the leading term:
/// `f_d = lead(p) / lead(P_d)`, subtract `f_d P_d`, repeat on the remainder.
pub fn gegenbauer_expand(n: usize, p: &Polynomial) -> Result<GegenbauerExpansion> {
    check_dimension(n)?;
    if p.is_zero() {
        return Ok(GegenbauerExpansion {
            n,
            coeffs: vec![0.0],
        });
    }
    let d = p.degree();
    let family = gegenbauer_family(n, d)?;
    let mut rest: Vec<f64> = p.coeffs().to_vec();
    let mut coeffs = vec![0.0; d + 1];
    for k in (0..=d).rev() {
        let basis = family[k].coeffs();
        let f = rest[k] / basis[k];
        coeffs[k] = f;
        for (r, &b) in rest.iter_mut().zip(basis) {
            *r -= f * b;
        }
        rest[k] = 0.0;
    }
    Ok(GegenbauerExpansion { n, coeffs })
}

/// Parameters of an adjacent Jacobi family:
/// `alpha = a + (n-3)/2`, `beta = b + (n-3)/2` with `a, b` in `{0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiParams {
    n: usize,
    a: u8,
    b: u8,
}

impl JacobiParams {
    pub fn new(n: usize, a: u8, b: u8) -> Result<Self> {
        check_dimension(n)?;
        if a > 1 || b > 1 {
            return Err(Error::PreconditionViolated(format!(
                "adjacent shifts must be 0 or 1, got a={a}, b={b}"
            )));
        }
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.a as f64 + (self.n as f64 - 3.0) / 2.0
    }

    pub fn beta(&self) -> f64 {
        self.b as f64 + (self.n as f64 - 3.0) / 2.0
    }

    /// Squared norms `h_i` of the standard Jacobi polynomials up to a common
    /// positive factor, so `1 / h_i` are the reproducing-kernel weights.
    pub fn relative_norms(&self, kmax: usize) -> Vec<f64> {
        let (al, be) = (self.alpha(), self.beta());
        let mut g = 1.0;
        let mut out = Vec::with_capacity(kmax + 1);
        for i in 0..=kmax {
            if i > 0 {
                let fi = i as f64;
                g *= (fi + al) * (fi + be) / ((fi + al + be) * fi);
            }
            out.push(g / (2.0 * i as f64 + al + be + 1.0));
        }
        out
    }
}

/// Degree-`k` Jacobi polynomial `P_k^{(alpha, beta)}` in the standard
/// normalization, whose value at 1 is `binom(k + alpha, k) > 0`.
pub fn jacobi_adjacent(params: JacobiParams, k: usize) -> Polynomial {
    jacobi_family(params, k).pop().expect("family is nonempty")
}

pub fn jacobi_family(params: JacobiParams, kmax: usize) -> Vec<Polynomial> {
    let (al, be) = (params.alpha(), params.beta());
    let t = Polynomial::new(vec![0.0, 1.0]);
    let mut family = vec![Polynomial::constant(1.0)];
    if kmax >= 1 {
        // (alpha+1) + (alpha+beta+2)(t-1)/2
        let slope = (al + be + 2.0) / 2.0;
        family.push(Polynomial::new(vec![al + 1.0 - slope, slope]));
    }
    for k in 1..kmax {
        let kf = k as f64;
        let c = 2.0 * kf + al + be;
        let a1 = 2.0 * (kf + 1.0) * (kf + al + be + 1.0) * c;
        let lin = (c + 1.0) * (c + 2.0) * c;
        let cst = (c + 1.0) * (al * al - be * be);
        let back = 2.0 * (kf + al) * (kf + be) * (c + 2.0);
        let next = &(&(&t.scale(lin) + &Polynomial::constant(cst)) * &family[k])
            - &family[k - 1].scale(back);
        family.push(next.scale(1.0 / a1));
    }
    family
}

/// Values of the standard Jacobi polynomials `P_0..P_kmax` at `t`.
pub fn jacobi_values(params: JacobiParams, kmax: usize, t: f64) -> Vec<f64> {
    let (al, be) = (params.alpha(), params.beta());
    let mut values = vec![1.0];
    if kmax >= 1 {
        values.push(al + 1.0 + (al + be + 2.0) * (t - 1.0) / 2.0);
    }
    for k in 1..kmax {
        let kf = k as f64;
        let c = 2.0 * kf + al + be;
        let a1 = 2.0 * (kf + 1.0) * (kf + al + be + 1.0) * c;
        let next = ((c + 1.0) * ((c + 2.0) * c * t + al * al - be * be) * values[k]
            - 2.0 * (kf + al) * (kf + be) * (c + 2.0) * values[k - 1])
            / a1;
        values.push(next);
    }
    values
}

/// Greatest zero `t_k^{a,b}` of the adjacent polynomial of degree `k >= 1`.
pub fn adjacent_greatest_zero(n: usize, a: u8, b: u8, k: usize) -> Result<f64> {
    let params = JacobiParams::new(n, a, b)?;
    if k == 0 {
        return Err(Error::NoRealRoot);
    }
    greatest_zero(&jacobi_adjacent(params, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn low_degree_gegenbauer() {
        assert_eq!(gegenbauer(3, 0).unwrap().coeffs(), &[1.0]);
        assert_eq!(gegenbauer(3, 1).unwrap().coeffs(), &[0.0, 1.0]);
        for n in 3..12 {
            let p2 = gegenbauer(n, 2).unwrap();
            let nf = n as f64;
            assert!(close(p2.coeffs()[0], -1.0 / (nf - 1.0), 1e-15));
            assert!(close(p2.coeffs()[2], nf / (nf - 1.0), 1e-15));
        }
        let legendre2 = gegenbauer(3, 2).unwrap();
        assert_eq!(legendre2.coeffs(), &[-0.5, 0.0, 1.5]);
    }

    #[test]
    fn gegenbauer_rejects_small_dimension() {
        assert_eq!(gegenbauer(2, 3), Err(Error::InvalidDimension(2)));
    }

    #[test]
    fn normalized_at_one() {
        for n in 3..25 {
            for k in 0..16 {
                let v = gegenbauer(n, k).unwrap().eval(1.0);
                assert!((v - 1.0).abs() < 1e-12, "n={n} k={k} v={v}");
            }
        }
    }

    #[test]
    fn jacobi_linear_root() {
        let p = jacobi_adjacent(JacobiParams::new(3, 1, 0).unwrap(), 1);
        let (_, rem) = p.div_linear(-1.0 / 3.0);
        assert!(rem.abs() < 1e-15);
        assert!(p.eval(1.0) > 0.0);
    }

    #[test]
    fn jacobi_value_at_one_is_binomial() {
        let params = JacobiParams::new(5, 1, 0).unwrap();
        // alpha = 2: binom(k+2, k) = (k+1)(k+2)/2
        for k in 0..8 {
            let want = ((k + 1) * (k + 2)) as f64 / 2.0;
            let got = jacobi_adjacent(params, k).eval(1.0);
            assert!(close(got, want, 1e-12), "k={k}: {got} vs {want}");
            assert!(close(jacobi_values(params, k, 1.0)[k], want, 1e-12));
        }
    }

    #[test]
    fn jacobi_00_matches_gegenbauer_roots() {
        for n in [3, 4, 8, 24] {
            let params = JacobiParams::new(n, 0, 0).unwrap();
            for k in 1..8 {
                let j = jacobi_adjacent(params, k);
                let g = gegenbauer(n, k).unwrap();
                let ratio = j.eval(1.0) / g.eval(1.0);
                for i in 0..=20 {
                    let t = -1.0 + i as f64 * 0.1;
                    assert!((j.eval(t) - ratio * g.eval(t)).abs() < 1e-9 * ratio);
                }
            }
        }
    }

    #[test]
    fn expansion_of_t_squared() {
        for n in 3..20 {
            let e = gegenbauer_expand(n, &Polynomial::new(vec![0.0, 0.0, 1.0])).unwrap();
            let nf = n as f64;
            assert!(close(e.coeffs[0], 1.0 / nf, 1e-14));
            assert!(e.coeffs[1].abs() < 1e-15);
            assert!(close(e.coeffs[2], (nf - 1.0) / nf, 1e-14));
        }
    }

    #[test]
    fn expansion_of_basis_element() {
        let e = gegenbauer_expand(7, &gegenbauer(7, 5).unwrap()).unwrap();
        for (k, f) in e.coeffs.iter().enumerate() {
            let want = if k == 5 { 1.0 } else { 0.0 };
            assert!((f - want).abs() < 1e-13, "k={k} f={f}");
        }
    }

    #[test]
    fn div_linear_recovers_factor() {
        let p = Polynomial::from_roots(&[0.5, -0.25, 0.75]);
        let (q, r) = p.div_linear(-0.25);
        assert!(r.abs() < 1e-15);
        let back = &q * &Polynomial::linear_factor(-0.25);
        for (a, b) in back.coeffs().iter().zip(p.coeffs()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn derivative_recurrence_matches_monomial_derivative() {
        let n = 6;
        let family = gegenbauer_family(n, 9).unwrap();
        for &t in &[-0.9, -0.3, 0.1, 0.77] {
            let d = gegenbauer_derivative_values(n, 9, t);
            for k in 0..=9 {
                let want = family[k].derivative().eval(t);
                assert!((d[k] - want).abs() < 1e-11, "k={k}");
            }
        }
    }

    #[test]
    fn display_is_readable() {
        let p = Polynomial::new(vec![-1.0, 0.0, 2.0]);
        assert_eq!(p.to_string(), "2*t^2 - 1");
    }
}
