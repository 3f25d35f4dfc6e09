//! Filling of a spherical vacuum cavity in an ideal incompressible fluid,
//! with an outward Casimir surface pressure `C/(8πR⁴)` opposing the ambient
//! pressure `p_inf`.
//!
//! With `V = dR/dt` the surface velocity, momentum balance reduces to
//!
//! ```text
//! dV²/dR + 3V²/R = C/(4πρR⁵) − 2p_inf/(ρR)
//! ```
//!
//! whose solution from rest at `R = a` is
//!
//! ```text
//! V² = (a³/R³)·[(2p_inf/3ρ)(1 − R³/a³) − (C/4πρ)(1/(R a³))(1 − R/a)].
//! ```
//!
//! For `C > 0` the velocity vanishes again at the bounce radius `R*`;
//! for `C = 0` this is the classical Rayleigh collapse to `R = 0`.
//! Only the inward phase up to the bounce is modelled. Surface tension,
//! viscosity and compressibility are not included, and the Casimir
//! pressure is taken as instantaneous (static) at every radius.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::numerics::{
    find_root, integrate, ode_solve, Abscissa, OdeOptions, QuadratureProblem, RootProblem, Singularity,
};
use crate::trajectory::{Sample, TerminalEvent, Trajectory};
use crate::{Error, Result};

/// Relative tolerance used for the bounce-radius root find.
pub const BOUNCE_REL_TOL: f64 = 1e-14;
/// Relative tolerance handed to the time quadrature.
pub const TIME_REL_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoleScenario {
    a: f64,
    p_inf: f64,
    rho: f64,
    c: f64,
    bounce: Option<f64>,
}

impl HoleScenario {
    /// `a`: initial radius (m), `p_inf`: ambient pressure (Pa), `rho`:
    /// density (kg/m³), `c`: Casimir constant (J·m).
    ///
    /// Rejects `c >= 8π p_inf a⁴`, where the Casimir pressure at the
    /// initial radius already matches the ambient pressure and the cavity
    /// never starts to fill.
    pub fn new(a: f64, p_inf: f64, rho: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain("initial cavity radius must be positive"));
        }
        if !(p_inf.is_finite() && p_inf > 0.0) {
            return Err(Error::Domain("ambient pressure must be positive"));
        }
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::Domain("fluid density must be positive"));
        }
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::Domain("Casimir constant must be non-negative"));
        }
        if c >= 8.0 * PI * p_inf * a * a * a * a {
            return Err(Error::Domain(
                "Casimir pressure at the initial radius is not below the ambient pressure; the cavity does not fill",
            ));
        }
        let mut s = Self {
            a,
            p_inf,
            rho,
            c,
            bounce: None,
        };
        if c > 0.0 {
            s.bounce = Some(s.solve_bounce()?);
        }
        Ok(s)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn p_inf(&self) -> f64 {
        self.p_inf
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `2p_inf/(3ρ)`
    fn drive(&self) -> f64 {
        2.0 * self.p_inf / (3.0 * self.rho)
    }

    /// `C/(4πρ)`
    fn casimir_term(&self) -> f64 {
        self.c / (4.0 * PI * self.rho)
    }

    // Below the bounce the bracket of V² reduces to
    // (2p/3ρ)/R · (R(1 + x + x²) − R_asym) with x = R/a, after dividing out
    // the (1 − x) factor shared with the trivial root at R = a.
    fn solve_bounce(&self) -> Result<f64> {
        let r_asym = 3.0 * self.c / (8.0 * PI * self.p_inf * self.a * self.a * self.a);
        let a = self.a;
        let residual = |r: f64| {
            let x = r / a;
            r * (1.0 + x + x * x) - r_asym
        };
        let problem = RootProblem::new(residual, 0.0, a, BOUNCE_REL_TOL)?;
        find_root(&problem)
    }

    // V² from exact offsets: `from_a = a − R`, `from_bounce = R − R*`
    // (ignored when C = 0). Avoids cancellation at both singular ends.
    fn vsq_offsets(&self, r: f64, from_a: f64, from_bounce: f64) -> f64 {
        let a = self.a;
        let x = r / a;
        let bracket = match self.bounce {
            None => self.drive() * (1.0 + x + x * x),
            Some(rb) => self.drive() * from_bounce * (1.0 + (r + rb) / a + (r * r + r * rb + rb * rb) / (a * a)) / r,
        };
        let scale = a / r;
        scale * scale * scale * (from_a / a) * bracket
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if !(r.is_finite() && r > 0.0 && r <= self.a) {
            return Err(Error::Domain("radius must lie in (0, a]"));
        }
        Ok(())
    }

    /// Squared surface velocity at radius `r`. Negative values mark the
    /// region below the bounce that the surface never reaches.
    pub fn vsq(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        let a = self.a;
        let x = r / a;
        let scale = a / r;
        let bracket = self.drive() * (1.0 + x + x * x) - self.casimir_term() / (r * a * a * a);
        Ok(scale * scale * scale * (1.0 - x) * bracket)
    }

    /// `dV²/dR = C/(4πρR⁵) − 2p_inf/(ρR) − 3V²/R`.
    pub fn ode_rhs(&self, r: f64, vsq: f64) -> Result<f64> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Domain("radius must be positive"));
        }
        Ok(self.casimir_term() / libm::pow(r, 5.0) - 2.0 * self.p_inf / (self.rho * r) - 3.0 * vsq / r)
    }

    /// First integral `V²R³ + (2p_inf/3ρ)R³ + (C/4πρ)/R`, conserved along
    /// the motion.
    pub fn energy(&self, r: f64, vsq: f64) -> f64 {
        let r3 = r * r * r;
        vsq * r3 + self.drive() * r3 + self.casimir_term() / r
    }

    /// [`energy`](Self::energy) at the initial state (`R = a`, `V = 0`).
    pub fn initial_energy(&self) -> f64 {
        self.energy(self.a, 0.0)
    }

    /// Small-`R*/a` bounce radius `3C/(8π p_inf a³)`.
    pub fn bounce_radius_asymptotic(&self) -> Result<f64> {
        if self.c == 0.0 {
            return Err(Error::Domain("no bounce without a Casimir pressure (C = 0)"));
        }
        Ok(3.0 * self.c / (8.0 * PI * self.p_inf * self.a * self.a * self.a))
    }

    /// Smallest positive zero of V², found by bracketed root finding.
    pub fn bounce_radius_exact(&self) -> Result<f64> {
        self.bounce
            .ok_or(Error::Domain("no bounce without a Casimir pressure (C = 0)"))
    }

    /// Time for the surface to move from `a` in to `r_target`:
    /// `∫ dR / sqrt(V²(R))` over `[r_target, a]`.
    ///
    /// Both inverse-square-root ends (at `a` and at the bounce) are removed
    /// by square substitutions; with `C > 0` the integral is split at
    /// `sqrt(a R*)`. For `C = 0`, `r_target = 0` gives the full collapse time.
    pub fn fill_time(&self, r_target: f64) -> Result<f64> {
        if !(r_target.is_finite() && r_target >= 0.0 && r_target <= self.a) {
            return Err(Error::Domain("target radius must lie in [0, a]"));
        }
        if let Some(rb) = self.bounce {
            if r_target < rb {
                return Err(Error::ForbiddenRegion {
                    radius: r_target,
                    boundary: rb,
                });
            }
        }
        self.segment_time(r_target, self.a)
    }

    // Absolute floor for short segments: a small fraction of the Rayleigh
    // time scale a·sqrt(ρ/p_inf).
    fn time_abs_tol(&self) -> f64 {
        1e-3 * TIME_REL_TOL * self.a * libm::sqrt(self.rho / self.p_inf)
    }

    /// Time left from radius `r` until the bounce (`C > 0`) or complete
    /// collapse (`C = 0`).
    ///
    /// Computed directly rather than as a difference of elapsed times, so it
    /// stays resolved next to the bounce where elapsed time saturates.
    pub fn remaining_time(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        let end = self.bounce.unwrap_or(0.0);
        if r < end {
            return Err(Error::ForbiddenRegion {
                radius: r,
                boundary: end,
            });
        }
        self.segment_time(end, r)
    }

    fn split_radius(&self) -> Option<f64> {
        self.bounce.map(|rb| libm::sqrt(self.a * rb))
    }

    // Travel time between radii lo < hi, both inside [R*, a].
    fn segment_time(&self, lo: f64, hi: f64) -> Result<f64> {
        if lo >= hi {
            return Ok(0.0);
        }
        match self.split_radius() {
            None => self.time_near_start(lo, hi),
            Some(split) => {
                let mut t = 0.0;
                if lo < split {
                    t += self.time_near_bounce(lo, hi.min(split))?;
                }
                if hi > split {
                    t += self.time_near_start(lo.max(split), hi)?;
                }
                Ok(t)
            }
        }
    }

    // Piece mapped by R = a − u², accurate wherever V² ∝ (a − R).
    fn time_near_start(&self, lo: f64, hi: f64) -> Result<f64> {
        let a = self.a;
        let rb = self.bounce.unwrap_or(0.0);
        if hi == a {
            let integrand = |p: Abscissa| {
                let v2 = self.vsq_offsets(p.x, p.from_hi, p.x - rb);
                1.0 / libm::sqrt(v2)
            };
            let q = QuadratureProblem::new(integrand, lo, hi, Singularity::InvSqrtHi, TIME_REL_TOL)?
                .with_abs_tol(self.time_abs_tol());
            return integrate(&q).map(|q| q.value);
        }
        let integrand = |p: Abscissa| {
            let u = p.x;
            let d = u * u;
            let r = a - d;
            2.0 * u / libm::sqrt(self.vsq_offsets(r, d, r - rb))
        };
        let q = QuadratureProblem::new(
            integrand,
            libm::sqrt(a - hi),
            libm::sqrt(a - lo),
            Singularity::None,
            TIME_REL_TOL,
        )?
        .with_abs_tol(self.time_abs_tol());
        integrate(&q).map(|q| q.value)
    }

    // Piece mapped by R = R* + w², accurate wherever V² ∝ (R − R*).
    fn time_near_bounce(&self, lo: f64, hi: f64) -> Result<f64> {
        let a = self.a;
        let rb = self.bounce.ok_or(Error::Domain("no bounce radius"))?;
        if lo == rb {
            let integrand = |p: Abscissa| {
                let v2 = self.vsq_offsets(p.x, a - p.x, p.from_lo);
                1.0 / libm::sqrt(v2)
            };
            let q = QuadratureProblem::new(integrand, lo, hi, Singularity::InvSqrtLo, TIME_REL_TOL)?
                .with_abs_tol(self.time_abs_tol());
            return integrate(&q).map(|q| q.value);
        }
        let integrand = |p: Abscissa| {
            let w = p.x;
            let d = w * w;
            let r = rb + d;
            2.0 * w / libm::sqrt(self.vsq_offsets(r, a - r, d))
        };
        let q = QuadratureProblem::new(
            integrand,
            libm::sqrt(lo - rb),
            libm::sqrt(hi - rb),
            Singularity::None,
            TIME_REL_TOL,
        )?
        .with_abs_tol(self.time_abs_tol());
        integrate(&q).map(|q| q.value)
    }

    /// Time-resolved filling from rest at `a`: the rest sample followed by
    /// `n_samples − 1` radii on a geometric grid.
    pub fn simulate(&self, sampling: &HoleSampling) -> Result<Trajectory> {
        if sampling.n_samples < 2 {
            return Err(Error::Domain("need at least two samples"));
        }
        if !(sampling.start_offset > 0.0 && sampling.start_offset < 1.0) {
            return Err(Error::Domain("start offset must lie in (0, 1)"));
        }
        if !(sampling.stop_offset > 0.0 && sampling.stop_offset.is_finite()) {
            return Err(Error::Domain("stop offset must be positive"));
        }
        let r_hi = self.a * (1.0 - sampling.start_offset);
        let (r_lo, terminal) = match (self.bounce, sampling.r_floor) {
            (Some(rb), floor) => {
                let near = rb * (1.0 + sampling.stop_offset);
                match floor {
                    Some(f) if f > near => (f, TerminalEvent::ReachedTarget),
                    _ => (near, TerminalEvent::Bounce),
                }
            }
            (None, Some(f)) => (f, TerminalEvent::ReachedTarget),
            (None, None) => (self.a * 1e-3, TerminalEvent::ReachedTarget),
        };
        if !(r_lo > 0.0 && r_lo < r_hi) {
            return Err(Error::Domain(
                "sampling range is empty: floor must lie below the start radius",
            ));
        }

        // the rest sample at `a` plus n − 1 grid radii from r_hi down to r_lo
        let m = sampling.n_samples - 1;
        let ratio = r_lo / r_hi;
        let mut samples = Vec::with_capacity(m + 1);
        samples.push(Sample {
            t: 0.0,
            r: self.a,
            v: 0.0,
        });
        let mut t = 0.0;
        let mut prev = self.a;
        for k in 0..m {
            let r = if k + 1 == m {
                r_lo
            } else {
                r_hi * libm::pow(ratio, k as f64 / (m - 1) as f64)
            };
            t += self.segment_time(r, prev)?;
            let v2 = self.vsq_offsets(r, self.a - r, r - self.bounce.unwrap_or(0.0));
            samples.push(Sample {
                t,
                r,
                v: -libm::sqrt(v2),
            });
            prev = r;
        }
        Ok(Trajectory {
            samples,
            terminal_event: terminal,
        })
    }

    /// Integrates the `dV²/dR` equation numerically from rest at `a` and
    /// returns `V²` at each of `radii` (descending, inside `(0, a]`).
    ///
    /// Uses `ln R` as the independent variable so the step adapts to the
    /// many decades between `a` and the bounce.
    pub fn vsq_numeric(&self, radii: &[f64], rel_tol: f64) -> Result<Vec<f64>> {
        for &r in radii {
            self.check_radius(r)?;
        }
        let ln_a = libm::log(self.a);
        let xs: Vec<f64> = radii.iter().map(|&r| libm::log(r)).collect();
        let k_cas = self.casimir_term();
        let k_p = 2.0 * self.p_inf / self.rho;
        let rhs = |x: f64, y: &[f64; 1]| {
            let r = libm::exp(x);
            let r2 = r * r;
            [k_cas / (r2 * r2) - k_p - 3.0 * y[0]]
        };
        let opts = OdeOptions::new(rel_tol, rel_tol * 1e-4 * self.drive());
        let sol = ode_solve(rhs, [0.0], ln_a, &xs, opts)?;
        if !sol.is_complete() {
            return Err(Error::StepUnderflow {
                x: libm::exp(sol.x_end),
            });
        }
        Ok(sol.ys.iter().map(|y| y[0]).collect())
    }
}

/// Grid for [`HoleScenario::simulate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoleSampling {
    pub n_samples: usize,
    /// Optional radius at which to stop before the bounce (or, for `C = 0`,
    /// the end of the collapse; defaults to `a/1000`).
    pub r_floor: Option<f64>,
    /// First grid radius is `a(1 − start_offset)`.
    pub start_offset: f64,
    /// Last grid radius next to the bounce is `R*(1 + stop_offset)`.
    pub stop_offset: f64,
}

impl Default for HoleSampling {
    fn default() -> Self {
        Self {
            n_samples: 200,
            r_floor: None,
            start_offset: 1e-6,
            stop_offset: 1e-4,
        }
    }
}
