use super::Polynomial;
use crate::error::{Error, Result};

/// Number of uniform cells used when scanning for sign changes.
pub const SCAN_POINTS: usize = 4096;

const ROOT_TOL: f64 = 1e-12;

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        if hi - lo <= ROOT_TOL * 0.25 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn polish(p: &Polynomial, dp: &Polynomial, x: f64, lo: f64, hi: f64) -> f64 {
    let mut x = x;
    for _ in 0..3 {
        let d = dp.eval(x);
        if d == 0.0 {
            break;
        }
        let next = x - p.eval(x) / d;
        if !(lo..=hi).contains(&next) {
            break;
        }
        x = next;
    }
    x
}

/// All points in `[a, b]` where `p` changes sign on a uniform scan of
/// [`SCAN_POINTS`] cells, each refined by bisection plus Newton polish.
/// Returned in increasing order.
pub fn sign_change_roots(p: &Polynomial, a: f64, b: f64) -> Vec<f64> {
    if p.is_zero() || p.degree() == 0 || b <= a {
        return Vec::new();
    }
    let dp = p.derivative();
    let f = |t: f64| p.eval(t);
    let h = (b - a) / SCAN_POINTS as f64;
    let mut roots = Vec::new();
    let mut x0 = a;
    let mut f0 = f(a);
    if f0 == 0.0 {
        roots.push(a);
    }
    for i in 1..=SCAN_POINTS {
        let x1 = if i == SCAN_POINTS {
            b
        } else {
            a + h * i as f64
        };
        let f1 = f(x1);
        if f1 == 0.0 {
            roots.push(x1);
        } else if f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
            let r = bisect(&f, x0, x1);
            roots.push(polish(p, &dp, r, x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

/// Greatest zero of `p` inside `(-1, 1)`.
pub fn greatest_zero(p: &Polynomial) -> Result<f64> {
    sign_change_roots(p, -1.0, 1.0)
        .into_iter()
        .rfind(|&r| r > -1.0 && r < 1.0)
        .ok_or(Error::NoRealRoot)
}

/// Maximum of `p` on `[a, b]`: endpoints, every critical point found by
/// sign changes of `p'`, and the scan grid itself. Returns `(argmax, max)`.
pub fn max_on_interval(p: &Polynomial, a: f64, b: f64) -> (f64, f64) {
    let mut best = (a, p.eval(a));
    let mut consider = |t: f64| {
        let v = p.eval(t);
        if v > best.1 {
            best = (t, v);
        }
    };
    consider(b);
    for c in sign_change_roots(&p.derivative(), a, b) {
        consider(c);
    }
    let h = (b - a) / SCAN_POINTS as f64;
    for i in 1..SCAN_POINTS {
        consider(a + h * i as f64);
    }
    best
}
