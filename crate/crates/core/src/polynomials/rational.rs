//! Exact rational polynomials for certifying the sharp cases without
//! rounding error. Sign conditions on intervals are decided with Sturm
//! sequences, so a pass here is a proof, not a numerical observation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

use super::Polynomial;
use crate::error::{Error, Result};

/// Parses `p/q`, an integer, or a decimal with optional exponent
/// (`-1.25e-3`) into the exact rational it denotes.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad number `{text}`"));
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (text, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(all);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -r } else { r })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `t - root`
    pub fn linear_factor(root: BigRational) -> Self {
        Self::new(vec![-root, BigRational::one()])
    }

    pub fn from_roots(roots: &[BigRational]) -> Self {
        roots
            .iter()
            .fold(Self::constant(BigRational::one()), |acc, r| {
                acc.mul(&Self::linear_factor(r.clone()))
            })
    }

    /// Reads one coefficient per line in ascending degree. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let coeffs = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("no coefficients".into()));
        }
        Ok(Self::new(coeffs))
    }

    /// Exact image of a float polynomial (every finite `f64` is a dyadic rational).
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        p.coeffs()
            .iter()
            .map(|&c| {
                BigRational::from_float(c)
                    .ok_or_else(|| Error::Parse(format!("non-finite coefficient {c}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(to_f64).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            (0..len)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => BigRational::zero(),
                })
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&rat(-1)))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Polynomial long division, `(quotient, remainder)`. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.coeffs.last().unwrap();
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / lead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * d;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            Some(lead) => self.scale(&lead.recip()),
            None => Self::zero(),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors: same real roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() && seq.last().unwrap().degree() > 0 {
            let k = seq.len();
            let (_, r) = seq[k - 2].div_rem(&seq[k - 1]);
            seq.push(r.scale(&rat(-1)));
        }
        if seq.last().unwrap().is_zero() {
            seq.pop();
        }
        seq
    }

    /// Checks `self(t) <= 0` for all `t` in `[a, b]` exactly. On failure
    /// returns a rational witness with `self(witness) > 0`.
    pub fn nonpositive_on(
        &self,
        a: &BigRational,
        b: &BigRational,
    ) -> std::result::Result<(), BigRational> {
        if self.is_zero() {
            return Ok(());
        }
        for end in [a, b] {
            if self.eval(end).is_positive() {
                return Err(end.clone());
            }
        }
        if a >= b || self.degree() == 0 {
            return Ok(());
        }
        // Deflate roots sitting on the endpoints so Sturm counts see only the interior.
        let mut g = self.squarefree_part();
        for end in [a, b] {
            if g.eval(end).is_zero() {
                g = g.div_rem(&Self::linear_factor(end.clone())).0;
            }
        }
        let sturm = g.sturm_sequence();
        let count = |lo: &BigRational, hi: &BigRational| -> usize {
            variations(&sturm, lo).saturating_sub(variations(&sturm, hi))
        };
        let half = BigRational::new(BigInt::one(), BigInt::from(2));

        // Pull the endpoints inward past any root of f sitting on them.
        let mut lo = a.clone();
        if self.eval(a).is_zero() {
            let mut step = (b - a) * &half;
            loop {
                let cand = a + &step;
                if !g.eval(&cand).is_zero() && count(a, &cand) == 0 {
                    lo = cand;
                    break;
                }
                step *= &half;
            }
            if self.eval(&lo).is_positive() {
                return Err(lo);
            }
        }
        let mut hi = b.clone();
        if self.eval(b).is_zero() {
            let mut step = (b - &lo) * &half;
            loop {
                let cand = b - &step;
                if cand > lo && !g.eval(&cand).is_zero() && count(&cand, b) == 0 {
                    hi = cand;
                    break;
                }
                step *= &half;
            }
            if self.eval(&hi).is_positive() {
                return Err(hi);
            }
        }

        let mut stack = vec![(lo, hi)];
        while let Some((lo, hi)) = stack.pop() {
            if lo >= hi {
                continue;
            }
            let c = count(&lo, &hi);
            if c <= 1 {
                // f keeps its sign between lo and the root, and between the root and hi.
                for end in [&lo, &hi] {
                    if self.eval(end).is_positive() {
                        return Err(end.clone());
                    }
                }
                continue;
            }
            let width = &hi - &lo;
            let mut frac = half.clone();
            let mut mid = &lo + &width * &frac;
            let mut eighth = BigRational::new(BigInt::one(), BigInt::from(8));
            while g.eval(&mid).is_zero() {
                frac = &half + &eighth;
                eighth *= &half;
                mid = &lo + &width * &frac;
            }
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        Ok(())
    }
}

fn variations(seq: &[RationalPolynomial], x: &BigRational) -> usize {
    let mut last = Ordering::Equal;
    let mut changes = 0;
    for p in seq {
        let s = p.eval(x).cmp(&BigRational::zero());
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact Gegenbauer polynomials `P_0..P_kmax` for dimension `n`.
pub fn gegenbauer_exact(n: usize, kmax: usize) -> Result<Vec<RationalPolynomial>> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    let t = RationalPolynomial::new(vec![BigRational::zero(), BigRational::one()]);
    let mut family = vec![RationalPolynomial::constant(BigRational::one())];
    if kmax >= 1 {
        family.push(t.clone());
    }
    let n = n as i64;
    for k in 1..kmax {
        let kk = k as i64;
        let denom = rat(kk + n - 2);
        let next = t
            .mul(&family[k])
            .scale(&(rat(2 * kk + n - 2) / &denom))
            .sub(&family[k - 1].scale(&(rat(kk) / &denom)));
        family.push(next);
    }
    Ok(family)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactExpansion {
    pub n: usize,
    pub coeffs: Vec<BigRational>,
}

impl ExactExpansion {
    pub fn f0(&self) -> BigRational {
        self.coeffs
            .first()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }
}

/// Exact Gegenbauer expansion by leading-term substitution.
pub fn gegenbauer_expand_exact(n: usize, p: &RationalPolynomial) -> Result<ExactExpansion> {
    if p.is_zero() {
        return Ok(ExactExpansion {
            n,
            coeffs: vec![BigRational::zero()],
        });
    }
    let d = p.degree();
    let family = gegenbauer_exact(n, d)?;
    let mut rest = p.clone();
    let mut coeffs = vec![BigRational::zero(); d + 1];
    for k in (0..=d).rev() {
        let lead = rest
            .coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero);
        if lead.is_zero() {
            continue;
        }
        let f = lead / family[k].coeffs.last().unwrap();
        rest = rest.sub(&family[k].scale(&f));
        coeffs[k] = f;
    }
    debug_assert!(rest.is_zero());
    Ok(ExactExpansion { n, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("-1.25e-1").unwrap(), q(-1, 8));
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("2E2").unwrap(), q(200, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        for bad in ["", "-", "1/0", "abc", "1.2.3", "1e"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        let p = RationalPolynomial::parse("# c\n1\n\n0\n-0.5\n").unwrap();
        assert_eq!(p.coeffs(), &[q(1, 1), q(0, 1), q(-1, 2)]);
    }

    #[test]
    fn exact_t_squared_expansion() {
        let t2 = RationalPolynomial::new(vec![q(0, 1), q(0, 1), q(1, 1)]);
        for n in 3..10 {
            let e = gegenbauer_expand_exact(n, &t2).unwrap();
            assert_eq!(e.coeffs[0], q(1, n as i64));
            assert_eq!(e.coeffs[2], q(n as i64 - 1, n as i64));
        }
    }

    #[test]
    fn squarefree_drops_multiplicity() {
        let p = RationalPolynomial::from_roots(&[q(1, 2), q(1, 2), q(-1, 3), q(0, 1), q(0, 1)]);
        let sf = p.squarefree_part();
        assert_eq!(sf.degree(), 3);
        assert!(sf.eval(&q(1, 2)).is_zero());
    }

    #[test]
    fn nonpositive_with_touching_roots() {
        // (t + 1)(t - 1/2) t^2 is <= 0 on [-1, 1/2] with a double root at 0.
        let p = RationalPolynomial::from_roots(&[q(-1, 1), q(1, 2), q(0, 1), q(0, 1)]);
        assert!(p.nonpositive_on(&q(-1, 1), &q(1, 2)).is_ok());
        let w = p.nonpositive_on(&q(-1, 1), &q(3, 4)).unwrap_err();
        assert!(p.eval(&w).is_positive());
    }

    #[test]
    fn nonpositive_detects_interior_bump() {
        // -(t - 0.1)(t - 0.2) is positive between the roots.
        let p = RationalPolynomial::from_roots(&[q(1, 10), q(2, 10)]).scale(&q(-1, 1));
        let w = p.nonpositive_on(&q(-1, 1), &q(1, 1)).unwrap_err();
        assert!(p.eval(&w).is_positive());
    }

    #[test]
    fn float_roundtrip_is_exact() {
        let f = Polynomial::new(vec![0.5, -0.25, 3.0]);
        let r = RationalPolynomial::from_polynomial(&f).unwrap();
        assert_eq!(r.to_polynomial(), f);
    }
}
