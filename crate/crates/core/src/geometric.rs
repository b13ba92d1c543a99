//! Geometric upper bounds: the Fejes Tóth distance bound on `S^2` and the
//! Coxeter–Böröczky simplex bound through the Schläfli function.
//!
//! The Schläfli function is defined by `F_0 = F_1 = 1` and
//!
//! ```text
//! F_{j+1}(a) = (2/pi) * integral from (1/2) arccos(1/j) to a of F_{j-1}(beta(t)) dt,
//! beta(t)   = (1/2) arccos(cos 2t / (1 - 2 cos 2t)).
//! ```
//!
//! `F_2` and `F_3` integrate a constant and are evaluated in closed form.
//! Higher orders are tabulated bottom-up: `F_j` is integrated once over its
//! whole range and stored on a grid, so evaluating `F_{j+2}` costs table
//! lookups rather than a nested quadrature per point.

use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{BoundReport, Certificate, Method};

const MAX_DEPTH: u32 = 30;
const TABLE_SEGMENTS: usize = 1024;

/// Fejes Tóth's bound on the minimum distance of `m` points on `S^2`:
/// `sqrt(4 - 1/sin^2(phi))` with `phi = pi m / (6 (m - 2))`.
pub fn fejes_toth_bound(m: usize) -> Result<f64> {
    if m < 3 {
        return Err(Error::PreconditionViolated(format!("M = {m} below 3")));
    }
    let phi = PI * m as f64 / (6.0 * (m as f64 - 2.0));
    let radicand = 4.0 - 1.0 / phi.sin().powi(2);
    if radicand < 0.0 {
        return Err(Error::Degenerate(format!("negative radicand for M = {m}")));
    }
    Ok(radicand.sqrt())
}

/// Upper bound on `A(3, s)` from the Fejes Tóth inequality: the largest `M`
/// whose distance bound still admits the chord `sqrt(2 (1 - s))`.
pub fn fejes_toth_cardinality(s: f64) -> Result<BoundReport> {
    if !(-1.0..1.0).contains(&s) {
        return Err(Error::OutOfRange(s));
    }
    let chord = (2.0 * (1.0 - s)).sqrt();
    let mut best = 2usize;
    let mut distance_bound = 2.0;
    for m in 3.. {
        let d = fejes_toth_bound(m)?;
        if d < chord - 1e-12 {
            break;
        }
        best = m;
        distance_bound = d;
    }
    let value = best as f64;
    Ok(BoundReport::cardinality(
        3,
        s,
        Method::FejesToth,
        value,
        true,
        Certificate::FejesToth {
            min_distance: chord,
            cardinality: best,
            distance_bound,
        },
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchlafliEval {
    pub n: usize,
    pub alpha: f64,
    pub value: f64,
    pub tol: f64,
    pub error_estimate: f64,
    /// Some `beta(t)` argument fell outside `[-1, 1]` and was clamped.
    pub clamped: bool,
    /// Adaptive refinement hit the depth cap somewhere.
    pub depth_capped: bool,
}

struct Quad {
    value: f64,
    error: f64,
    capped: bool,
}

/// `[a, b]` with `f` at both ends and the midpoint, and its Simpson value.
#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson_step(f: &dyn Fn(f64) -> f64, panel: Panel, tol: f64, depth: u32, out: &mut Quad) {
    let Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole,
    } = panel;
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth >= MAX_DEPTH || delta.abs() <= 15.0 * tol {
        if depth >= MAX_DEPTH && delta.abs() > 15.0 * tol {
            out.capped = true;
        }
        out.value += left + right + delta / 15.0;
        out.error += delta.abs() / 15.0;
        return;
    }
    let halves = [
        Panel {
            a,
            b: m,
            fa,
            fm: flm,
            fb: fm,
            whole: left,
        },
        Panel {
            a: m,
            b,
            fa: fm,
            fm: frm,
            fb,
            whole: right,
        },
    ];
    for half in halves {
        simpson_step(f, half, 0.5 * tol, depth + 1, out);
    }
}

/// Composite Simpson on 64 panels; used only to size tolerances.
fn rough_integral(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let panels = 64;
    let h = (b - a) / panels as f64;
    let sum: f64 = (0..=panels)
        .map(|i| {
            let w = if i == 0 || i == panels {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * f(a + i as f64 * h)
        })
        .sum();
    sum * h / 3.0
}

/// The absolute tolerance `tol`, tightened to a relative one when the
/// integral is smaller than one.
fn effective_tol(tol: f64, f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let scale = rough_integral(f, a, b).abs();
    if scale > 0.0 {
        tol * scale.min(1.0)
    } else {
        tol
    }
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Quad {
    let mut out = Quad {
        value: 0.0,
        error: 0.0,
        capped: false,
    };
    if b <= a {
        return out;
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let panel = Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole,
    };
    simpson_step(f, panel, tol, 0, &mut out);
    out
}

/// Lower integration limit of `F_j`, `j >= 2`.
fn lower_limit(j: usize) -> f64 {
    0.5 * (1.0 / (j as f64 - 1.0)).acos()
}

/// `F_j` on `[lower_limit(j), pi/2]`, sampled at `x = lo + len * u^2` for a
/// uniform grid in `u`; the square-root spacing absorbs the branch-point
/// behaviour at the lower limit.
struct Table {
    lo: f64,
    len: f64,
    values: Vec<f64>,
    error: f64,
}

fn lagrange4(h: [f64; 4], r: f64) -> f64 {
    // nodes at -1, 0, 1, 2
    let w0 = -r * (r - 1.0) * (r - 2.0) / 6.0;
    let w1 = (r + 1.0) * (r - 1.0) * (r - 2.0) / 2.0;
    let w2 = -(r + 1.0) * r * (r - 2.0) / 2.0;
    let w3 = (r + 1.0) * r * (r - 1.0) / 6.0;
    w0 * h[0] + w1 * h[1] + w2 * h[2] + w3 * h[3]
}

fn interpolate(values: &[f64], pos: f64) -> f64 {
    let last = values.len() - 1;
    let i = (pos.floor() as usize).clamp(1, last - 2);
    lagrange4(
        [values[i - 1], values[i], values[i + 1], values[i + 2]],
        pos - i as f64,
    )
}

impl Table {
    fn eval(&self, x: f64) -> f64 {
        let u = ((x - self.lo) / self.len).clamp(0.0, 1.0).sqrt();
        interpolate(&self.values, u * (self.values.len() - 1) as f64).max(0.0)
    }
}

/// Evaluation context for the Schläfli function at a fixed tolerance. Tables
/// are built on demand and shared by every evaluation in the context.
pub struct SchlafliContext {
    tol: f64,
    tables: Vec<Option<Table>>,
    clamped: Cell<bool>,
    capped: Cell<bool>,
}

impl SchlafliContext {
    pub fn new(tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::PreconditionViolated(format!("tolerance {tol}")));
        }
        Ok(Self {
            tol,
            tables: Vec::new(),
            clamped: Cell::new(false),
            capped: Cell::new(false),
        })
    }

    fn beta(&self, t: f64) -> f64 {
        let c = (2.0 * t).cos();
        let denom = 1.0 - 2.0 * c;
        if denom <= 0.0 {
            self.clamped.set(true);
            return 0.0;
        }
        let arg = c / denom;
        if arg.abs() > 1.0 + 1e-12 {
            self.clamped.set(true);
        }
        0.5 * arg.clamp(-1.0, 1.0).acos()
    }

    /// `F_j(x)` from closed forms or a built table.
    fn inner(&self, j: usize, x: f64) -> f64 {
        match j {
            0 | 1 => 1.0,
            2 => (2.0 / PI * x).max(0.0),
            3 => (2.0 / PI * (x - FRAC_PI_6)).max(0.0),
            _ => self.tables[j].as_ref().expect("table built").eval(x),
        }
    }

    fn inner_error(&self, j: usize) -> f64 {
        if j < 4 {
            0.0
        } else {
            self.tables[j].as_ref().map_or(0.0, |t| t.error)
        }
    }

    /// Builds (or widens) the table of `F_j` so it covers `[lower_limit(j), hi]`.
    fn ensure(&mut self, j: usize, hi: f64) {
        if j < 4 {
            return;
        }
        if self.tables.len() <= j {
            self.tables.resize_with(j + 1, || None);
        }
        let lo = lower_limit(j);
        let hi = hi.clamp(lo, FRAC_PI_2);
        if self.tables[j].as_ref().is_some_and(|t| t.lo + t.len >= hi) {
            return;
        }
        self.ensure(j - 2, self.beta(hi));
        let len = (hi - lo).max(1e-12);
        let integrand = |w: f64| {
            let t = lo + len * w * w;
            2.0 / PI * self.inner(j - 2, self.beta(t)) * 2.0 * len * w
        };
        let seg_tol =
            effective_tol(self.tol, &integrand, 0.0, 1.0) / (10.0 * TABLE_SEGMENTS as f64);
        let h = 1.0 / TABLE_SEGMENTS as f64;
        let mut values = Vec::with_capacity(TABLE_SEGMENTS + 1);
        values.push(0.0);
        let mut acc = 0.0;
        let mut quad_error = 0.0;
        for i in 0..TABLE_SEGMENTS {
            let q = adaptive_simpson(&integrand, i as f64 * h, (i + 1) as f64 * h, seg_tol);
            if q.capped {
                self.capped.set(true);
            }
            acc += q.value;
            quad_error += q.error;
            values.push(acc);
        }
        // Interpolating from even nodes onto odd ones overestimates the
        // full-grid cubic error by about 2^4.
        let evens: Vec<f64> = values.iter().step_by(2).copied().collect();
        let interp_error = (1..TABLE_SEGMENTS)
            .step_by(2)
            .map(|i| (interpolate(&evens, i as f64 / 2.0) - values[i]).abs())
            .fold(0.0, f64::max)
            / 16.0;
        let propagated = 2.0 / PI * len * self.inner_error(j - 2);
        self.tables[j] = Some(Table {
            lo,
            len,
            values,
            error: quad_error + interp_error + propagated,
        });
    }

    /// `F_n(alpha)` with an absolute error estimate.
    pub fn eval(&mut self, n: usize, alpha: f64) -> Result<SchlafliEval> {
        if !alpha.is_finite() {
            return Err(Error::DomainError(format!("alpha = {alpha}")));
        }
        let done = |value: f64, error: f64, this: &Self| SchlafliEval {
            n,
            alpha,
            value,
            tol: this.tol,
            error_estimate: error,
            clamped: this.clamped.get(),
            depth_capped: this.capped.get(),
        };
        if n <= 1 {
            return Ok(done(1.0, 0.0, self));
        }
        let lo = if n == 2 { 0.0 } else { lower_limit(n) };
        if alpha < lo - 1e-15 || alpha > FRAC_PI_2 {
            return Err(Error::DomainError(format!(
                "alpha = {alpha} outside [{lo}, pi/2] for F_{n}"
            )));
        }
        if n <= 3 {
            return Ok(done(self.inner(n, alpha), 0.0, self));
        }
        let top = self.beta(alpha.max(lo));
        self.ensure(n - 2, top);
        let len = alpha - lo;
        if len <= 0.0 {
            return Ok(done(0.0, 0.0, self));
        }
        let integrand = |w: f64| {
            let t = lo + len * w * w;
            2.0 / PI * self.inner(n - 2, self.beta(t)) * 2.0 * len * w
        };
        let tol = effective_tol(self.tol, &integrand, 0.0, 1.0);
        let q = adaptive_simpson(&integrand, 0.0, 1.0, tol);
        if q.capped {
            self.capped.set(true);
        }
        let error = q.error + 2.0 / PI * len * self.inner_error(n - 2);
        Ok(done(q.value, error, self))
    }
}

/// `F_n(alpha)` to absolute tolerance `tol`.
pub fn schlafli_f(n: usize, alpha: f64, tol: f64) -> Result<f64> {
    Ok(SchlafliContext::new(tol)?.eval(n, alpha)?.value)
}

/// `A(n, s) <= 2 F_{n-1}(alpha) / F_n(alpha)` with
/// `alpha = (1/2) arccos(s / (1 + (n - 2) s))`.
///
/// The reported value adds the propagated quadrature error to the central
/// quotient, so it errs on the large (safe) side.
pub fn coxeter_boroczky_bound(n: usize, s: f64, tol: f64) -> Result<BoundReport> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::OutOfRange(s));
    }
    let alpha = 0.5 * (s / (1.0 + (n as f64 - 2.0) * s)).acos();
    let mut ctx = SchlafliContext::new(tol)?;
    let num = ctx.eval(n - 1, alpha)?;
    let den = ctx.eval(n, alpha)?;
    if den.value <= den.error_estimate {
        return Err(Error::Degenerate(format!(
            "F_{n}({alpha}) = {} is within its error estimate",
            den.value
        )));
    }
    let central = 2.0 * num.value / den.value;
    let error = central
        * (num.error_estimate / num.value.max(f64::MIN_POSITIVE)
            + den.error_estimate / (den.value - den.error_estimate));
    let clamped = den.clamped || num.clamped;
    let rigorous = !clamped && !den.depth_capped && !num.depth_capped;
    Ok(BoundReport::cardinality(
        n,
        s,
        Method::CoxeterBoroczky,
        central + error,
        rigorous,
        Certificate::Quadrature {
            alpha,
            numerator: num.value,
            denominator: den.value,
            central,
            error_estimate: error,
            clamped,
        },
    ))
}
