//! Dormand-Prince 5(4) explicit integrator with embedded error control.
//!
//! Steps are shortened to land exactly on each requested output abscissa,
//! so reported states carry no interpolation error.

use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// First trial step; defaults to 1% of the span to the first output.
    pub initial_step: Option<f64>,
    pub max_steps: usize,
}

impl OdeOptions {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol,
            initial_step: None,
            max_steps: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeStatus {
    Completed,
    /// Step size collapsed; the solution stops before the last output.
    StepUnderflow,
    StepLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdeSolution<const N: usize> {
    /// Output abscissae actually reached, a prefix of the requested list.
    pub xs: Vec<f64>,
    pub ys: Vec<[f64; N]>,
    pub status: OdeStatus,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    /// Where integration stopped (equals the last output on success).
    pub x_end: f64,
}

impl<const N: usize> OdeSolution<N> {
    pub fn is_complete(&self) -> bool {
        self.status == OdeStatus::Completed
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// 5th minus embedded 4th order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[inline]
fn combine<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (w, k) in terms {
            acc += w * k[i];
        }
        *o += h * acc;
    }
    out
}

/// Integrates `y' = rhs(x, y)` from `(x0, y0)` through every abscissa in
/// `outputs`, which must move monotonically away from `x0` in one direction.
///
/// Integration proceeds backwards when the outputs lie below `x0`. A step
/// whose right-hand side is non-finite is rejected and retried smaller;
/// if the step collapses the partial solution is returned with
/// [`OdeStatus::StepUnderflow`].
pub fn ode_solve<const N: usize, F>(
    mut rhs: F,
    y0: [f64; N],
    x0: f64,
    outputs: &[f64],
    opts: OdeOptions,
) -> Result<OdeSolution<N>>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    if !(opts.rel_tol > 0.0) || !(opts.abs_tol >= 0.0) || (opts.rel_tol == 0.0 && opts.abs_tol == 0.0) {
        return Err(Error::Domain("ODE tolerances must be positive"));
    }
    if !x0.is_finite() || y0.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("ODE initial state must be finite"));
    }
    let mut sol = OdeSolution {
        xs: Vec::with_capacity(outputs.len()),
        ys: Vec::with_capacity(outputs.len()),
        status: OdeStatus::Completed,
        accepted_steps: 0,
        rejected_steps: 0,
        x_end: x0,
    };
    let Some(&last) = outputs.last() else {
        return Ok(sol);
    };
    let dir = if last >= x0 { 1.0 } else { -1.0 };
    let mut prev = x0;
    for &x in outputs {
        if !x.is_finite() || (x - prev) * dir < 0.0 {
            return Err(Error::Domain("ODE outputs must be finite and monotone away from x0"));
        }
        prev = x;
    }

    let mut x = x0;
    let mut y = y0;
    let mut k1 = rhs(x, &y);
    if k1.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("ODE right-hand side is not finite at the initial state"));
    }
    let first_span = (outputs[0] - x0).abs().max((last - x0).abs() * 1e-6);
    let mut h = opts
        .initial_step
        .map(f64::abs)
        .unwrap_or(0.01 * first_span)
        .max(f64::MIN_POSITIVE)
        * dir;

    for &target in outputs {
        loop {
            if x == target {
                break;
            }
            if sol.accepted_steps + sol.rejected_steps >= opts.max_steps {
                sol.status = OdeStatus::StepLimit;
                sol.x_end = x;
                return Ok(sol);
            }
            let remaining = target - x;
            let lands = h.abs() >= remaining.abs();
            let step = if lands { remaining } else { h };
            if step.abs() <= 16.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) && !lands {
                sol.status = OdeStatus::StepUnderflow;
                sol.x_end = x;
                return Ok(sol);
            }

            let k2 = rhs(x + C2 * step, &combine(&y, step, &[(A21, &k1)]));
            let k3 = rhs(x + C3 * step, &combine(&y, step, &[(A31, &k1), (A32, &k2)]));
            let k4 = rhs(x + C4 * step, &combine(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = rhs(
                x + C5 * step,
                &combine(&y, step, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let x_new = if lands { target } else { x + step };
            let k6 = rhs(
                x_new,
                &combine(&y, step, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            );
            let y_new = combine(&y, step, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let k7 = rhs(x_new, &y_new);

            let mut err_sq = 0.0;
            let mut finite = y_new.iter().all(|v| v.is_finite()) && k7.iter().all(|v| v.is_finite());
            for i in 0..N {
                let e = step * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let scale = opts.abs_tol + opts.rel_tol * y[i].abs().max(y_new[i].abs());
                let r = e / scale;
                err_sq += r * r;
            }
            let err = if N == 0 { 0.0 } else { libm::sqrt(err_sq / N as f64) };
            if !err.is_finite() {
                finite = false;
            }

            if finite && err <= 1.0 {
                sol.accepted_steps += 1;
                x = x_new;
                y = y_new;
                k1 = k7;
                let grow = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * libm::pow(err, -0.2)).clamp(0.2, 5.0)
                };
                // a landing step may be artificially short; never let it shrink h
                if !lands || step.abs() >= h.abs() {
                    h = step * grow;
                } else {
                    h *= grow.max(1.0);
                }
            } else {
                sol.rejected_steps += 1;
                let shrink = if finite {
                    (0.9 * libm::pow(err, -0.2)).clamp(0.1, 0.9)
                } else {
                    0.25
                };
                h = step * shrink;
                if h.abs() <= 16.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
                    sol.status = OdeStatus::StepUnderflow;
                    sol.x_end = x;
                    return Ok(sol);
                }
            }
        }
        sol.xs.push(x);
        sol.ys.push(y);
    }
    sol.x_end = x;
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let sol = ode_solve(
            |_, y: &[f64; 1]| [-y[0]],
            [1.0],
            0.0,
            &[1.0],
            OdeOptions::new(1e-10, 1e-14),
        )
        .unwrap();
        assert!(sol.is_complete());
        assert!((sol.ys[0][0] - libm::exp(-1.0)).abs() < 1e-8);
    }

    #[test]
    fn zero_rhs_is_exactly_constant() {
        let outs = [0.5, 1.0, 7.0];
        let sol = ode_solve(
            |_, _: &[f64; 2]| [0.0, 0.0],
            [3.25, -1.5],
            0.0,
            &outs,
            OdeOptions::new(1e-8, 0.0),
        )
        .unwrap();
        for y in &sol.ys {
            assert_eq!(*y, [3.25, -1.5]);
        }
        assert_eq!(sol.xs, outs);
    }

    #[test]
    fn backwards_integration_lands_on_outputs() {
        let outs = [-0.25, -0.5, -2.0];
        let sol = ode_solve(
            |_, y: &[f64; 1]| [y[0]],
            [1.0],
            0.0,
            &outs,
            OdeOptions::new(1e-11, 1e-14),
        )
        .unwrap();
        assert_eq!(sol.xs, outs);
        for (x, y) in sol.xs.iter().zip(&sol.ys) {
            assert!((y[0] - libm::exp(*x)).abs() < 1e-10);
        }
    }

    #[test]
    fn harmonic_oscillator_two_components() {
        let t = 2.0 * core::f64::consts::PI;
        let sol = ode_solve(
            |_, y: &[f64; 2]| [y[1], -y[0]],
            [1.0, 0.0],
            0.0,
            &[t],
            OdeOptions::new(1e-11, 1e-13),
        )
        .unwrap();
        assert!((sol.ys[0][0] - 1.0).abs() < 1e-9);
        assert!(sol.ys[0][1].abs() < 1e-9);
    }

    #[test]
    fn blow_up_reports_underflow_with_partial_solution() {
        // y' = y^2, y(0) = 1 blows up at x = 1
        let sol = ode_solve(
            |_, y: &[f64; 1]| [y[0] * y[0]],
            [1.0],
            0.0,
            &[0.5, 2.0],
            OdeOptions::new(1e-8, 1e-12),
        )
        .unwrap();
        assert_ne!(sol.status, OdeStatus::Completed);
        assert_eq!(sol.xs, [0.5]);
        assert!((sol.x_end - 1.0).abs() < 1e-3, "{}", sol.x_end);
    }

    #[test]
    fn non_monotone_outputs_are_rejected() {
        let r = ode_solve(
            |_, y: &[f64; 1]| [y[0]],
            [1.0],
            0.0,
            &[1.0, 0.5],
            OdeOptions::new(1e-8, 0.0),
        );
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn step_cap_is_reported() {
        let mut opts = OdeOptions::new(1e-12, 1e-14);
        opts.max_steps = 3;
        let sol = ode_solve(|x, _: &[f64; 1]| [libm::cos(10.0 * x)], [0.0], 0.0, &[10.0], opts).unwrap();
        assert_eq!(sol.status, OdeStatus::StepLimit);
        assert!(sol.xs.is_empty());
    }
}
