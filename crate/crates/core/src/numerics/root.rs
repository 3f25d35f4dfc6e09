//! Bracketed scalar root finding.
//!
//! Brent's method: inverse quadratic interpolation and secant steps,
//! safeguarded by bisection so the bracket always shrinks.

use crate::{Error, Result};

/// Iteration cap for [`find_root`].
pub const MAX_ITERATIONS: usize = 200;

/// A residual together with a sign-changing bracket.
pub struct RootProblem<F> {
    residual: F,
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
    rel_tol: f64,
    abs_tol: f64,
}

impl<F: Fn(f64) -> f64> RootProblem<F> {
    /// Evaluates the residual at both ends and rejects brackets without a sign change.
    pub fn new(residual: F, lo: f64, hi: f64, rel_tol: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::Domain("root bracket must be finite with lo < hi"));
        }
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::Domain("root rel_tol must lie in (0, 1)"));
        }
        let f_lo = residual(lo);
        let f_hi = residual(hi);
        if f_lo.is_nan() || f_hi.is_nan() {
            return Err(Error::Domain("residual is NaN at a bracket end"));
        }
        if (f_lo > 0.0 && f_hi > 0.0) || (f_lo < 0.0 && f_hi < 0.0) {
            return Err(Error::NoSignChange { lo, hi });
        }
        Ok(Self {
            residual,
            lo,
            hi,
            f_lo,
            f_hi,
            rel_tol,
            abs_tol: f64::MIN_POSITIVE,
        })
    }

    /// Absolute width floor, for roots that may sit at or near zero.
    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol.max(f64::MIN_POSITIVE);
        self
    }

    pub fn bracket(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }
}

/// Solves `p`, returning `x` whose enclosing bracket is narrower than
/// `rel_tol * |x|` (or the absolute floor).
pub fn find_root<F: Fn(f64) -> f64>(p: &RootProblem<F>) -> Result<f64> {
    let f = &p.residual;
    let (mut a, mut b) = (p.lo, p.hi);
    let (mut fa, mut fb) = (p.f_lo, p.f_hi);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITERATIONS {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * (p.rel_tol * b.abs()).max(p.abs_tol);
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut num, mut den);
            if a == c {
                num = 2.0 * m * s;
                den = 1.0 - s;
            } else {
                let q = fa / fc;
                let r = fb / fc;
                num = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                den = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if num > 0.0 {
                den = -den;
            } else {
                num = -num;
            }
            if 2.0 * num < (3.0 * m * den - (tol * den).abs()).min((e * den).abs()) {
                e = d;
                d = num / den;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::Domain("residual evaluated to NaN inside the bracket"));
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
    })
}
