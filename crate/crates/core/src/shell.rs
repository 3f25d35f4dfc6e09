//! Model study: collapse of an infinitely thin spherical dust shell with an
//! outward Casimir pressure `C/(8πR⁴)` added to its equation of motion.
//!
//! Geometric units throughout (`G = c = 1`): the Schwarzschild mass `M` is
//! a length in meters, the Casimir constant `C` an area in m², and `t` on
//! trajectories is proper time along the shell in meters. The equation of
//! motion is
//!
//! ```text
//! sqrt(1 + Ṙ²) = 1 − C/(2MR) + (M/2R) / (1 − C/(2MR)),
//! ```
//!
//! which is regular outside the singular radius `R_s = C/(2M)`.
//!
//! The Casimir term ignores the gravitational energy of the Casimir field
//! itself, so results are a study of the equation, not a physical
//! prediction. Writing `e = sqrt(1 + Ṙ²) − 1`, the exact behaviour is:
//!
//! * `C = 0`: `Ṙ² = M/R + M²/(4R²)`, collapse to `R = 0`.
//! * `0 < C ≤ M²`: `e > 0` for all `R > R_s` and `Ṙ²` diverges at `R_s`;
//!   there is no velocity zero.
//! * `C > M²`: `e` vanishes at `R_t = C²/(2M(C − M²))`, and `Ṙ² < 0` for
//!   all `R > R_t`. The allowed region is the bounded interval `(R_s, R_t]`:
//!   `R_t` is the outer turning radius, from which the shell falls inward
//!   toward `R_s`.
//!
//! The often-quoted minimum radius `C/(2M)` is the singular radius in every
//! case; it is always reported alongside the exact classification.

use alloc::vec::Vec;

use crate::numerics::{find_root, ode_solve, OdeOptions, RootProblem};
use crate::trajectory::{Sample, TerminalEvent, Trajectory};
use crate::{Error, Result};

/// Root-finder tolerance for the turning radius.
pub const TURNING_REL_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellScenario {
    m: f64,
    c: f64,
    r_start: f64,
}

impl ShellScenario {
    /// `m`: Schwarzschild mass (m), `c`: Casimir constant (m²),
    /// `r_start`: initial radius (m), outside `C/(2M)`.
    pub fn new(m: f64, c: f64, r_start: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::Domain("shell mass must be positive"));
        }
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::Domain("Casimir constant must be non-negative"));
        }
        if !(r_start.is_finite() && r_start > 0.0) {
            return Err(Error::Domain("start radius must be positive and finite"));
        }
        let s = Self { m, c, r_start };
        if r_start <= s.singular_radius() {
            return Err(Error::Domain(
                "start radius must lie outside the singular radius C/(2M)",
            ));
        }
        Ok(s)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn r_start(&self) -> f64 {
        self.r_start
    }

    /// `C/(2M)`, the pole of the equation of motion.
    pub fn singular_radius(&self) -> f64 {
        self.c / (2.0 * self.m)
    }

    /// Closed-form outer turning radius `C²/(2M(C − M²))`, when `C > M²`.
    pub fn turning_radius(&self) -> Option<f64> {
        let m2 = self.m * self.m;
        (self.c > m2).then(|| self.c * self.c / (2.0 * self.m * (self.c - m2)))
    }

    // e = sqrt(1 + Ṙ²) − 1 given the exact offset from_singular = R − C/(2M):
    // e = (2R_s² + (M − 2R_s)R) / (2R(R − R_s)).
    fn excess(&self, r: f64, from_singular: f64) -> f64 {
        if self.c == 0.0 {
            return self.m / (2.0 * r);
        }
        let rs = self.singular_radius();
        (2.0 * rs * rs + (self.m - 2.0 * rs) * r) / (2.0 * r * from_singular)
    }

    fn check_radius(&self, r: f64) -> Result<f64> {
        let rs = self.singular_radius();
        if !(r.is_finite() && r > rs) {
            return Err(Error::Domain("radius must lie outside the singular radius C/(2M)"));
        }
        Ok(r - rs)
    }

    /// Right-hand side `1 − C/(2MR) + (M/2R)/(1 − C/(2MR))`, equal to
    /// `sqrt(1 + Ṙ²)` wherever that is real.
    pub fn eom_rhs(&self, r: f64) -> Result<f64> {
        let d = self.check_radius(r)?;
        Ok(1.0 + self.excess(r, d))
    }

    /// `Ṙ² = rhs² − 1`; negative values mark the forbidden region.
    pub fn rdot_sq(&self, r: f64) -> Result<f64> {
        let d = self.check_radius(r)?;
        let e = self.excess(r, d);
        Ok(e * (2.0 + e))
    }

    pub fn classify_bounce(&self) -> Result<BounceClassification> {
        let rs = self.singular_radius();
        let m2 = self.m * self.m;
        let (kind, r_critical, root_found) = if self.c == 0.0 {
            (BounceKind::NoBounce, 0.0, None)
        } else if self.c <= m2 {
            (BounceKind::SingularApproach, rs, None)
        } else {
            let closed = self.turning_radius().unwrap_or(rs);
            (BounceKind::TurningPoint, closed, Some(self.find_turning_radius()?))
        };
        Ok(BounceClassification {
            kind,
            r_critical,
            r_critical_root_found: root_found,
            r_min_c_over_2m: rs,
        })
    }

    // Root of e(R) between the pole (e -> +inf) and a radius where e < 0,
    // found by doubling outward without using the closed form.
    fn find_turning_radius(&self) -> Result<f64> {
        let rs = self.singular_radius();
        let lo = rs * (1.0 + 4.0 * f64::EPSILON);
        let mut hi = self.r_start.max(2.0 * rs);
        let mut doublings = 0;
        while self.excess(hi, hi - rs) >= 0.0 {
            hi *= 2.0;
            doublings += 1;
            if doublings > 2000 || !hi.is_finite() {
                return Err(Error::NoSignChange { lo, hi });
            }
        }
        let problem = RootProblem::new(|r| self.excess(r, r - rs), lo, hi, TURNING_REL_TOL)?;
        find_root(&problem)
    }

    /// Proper-time trajectory moving inward from the start radius.
    ///
    /// * no bounce: down to `sampling.r_floor` (default `1e-6 · r_start`);
    /// * singular approach: down to `R_s + stop_fraction · R_s`;
    /// * turning point: if `r_start` is at or beyond `R_t` the shell cannot
    ///   be there with real velocity, so it starts at rest at `R_t`; in
    ///   either case it falls toward `R_s` and stops at
    ///   `R_s + stop_fraction · min(R_s, R_begin − R_s)`.
    ///
    /// The independent variable is chosen so the step shrinks in
    /// proportion to the distance from the end point.
    pub fn proper_time_trajectory(&self, sampling: &ShellSampling) -> Result<Trajectory> {
        if sampling.n_samples < 2 {
            return Err(Error::Domain("need at least two samples"));
        }
        if !(sampling.stop_fraction > 0.0 && sampling.stop_fraction < 1.0) {
            return Err(Error::Domain("stop fraction must lie in (0, 1)"));
        }
        let class = self.classify_bounce()?;
        let rs = self.singular_radius();
        match class.kind {
            BounceKind::NoBounce => {
                let floor = sampling.r_floor.unwrap_or(self.r_start * 1e-6);
                if !(floor > 0.0 && floor < self.r_start) {
                    return Err(Error::Domain("floor radius must lie in (0, r_start)"));
                }
                self.fall_toward(0.0, self.r_start, floor, TerminalEvent::ReachedTarget, sampling)
            }
            BounceKind::SingularApproach => {
                let stop = rs + sampling.stop_fraction * rs.min(self.r_start - rs);
                self.fall_toward(rs, self.r_start, stop, TerminalEvent::Bounce, sampling)
            }
            BounceKind::TurningPoint => {
                let rt = class.r_critical;
                if self.r_start >= rt {
                    self.fall_from_turning_point(rt, sampling)
                } else {
                    let stop = rs + sampling.stop_fraction * rs.min(self.r_start - rs);
                    self.fall_toward(rs, self.r_start, stop, TerminalEvent::Bounce, sampling)
                }
            }
        }
    }

    // R = center + (begin − center)·exp(−s), so dR ∝ (R − center) per unit s.
    fn fall_toward(
        &self,
        center: f64,
        begin: f64,
        stop: f64,
        terminal: TerminalEvent,
        sampling: &ShellSampling,
    ) -> Result<Trajectory> {
        let rs = self.singular_radius();
        let span = begin - center;
        let s_end = libm::log(span / (stop - center));
        let state = |s: f64| {
            let off = span * libm::exp(-s);
            let r = center + off;
            // center is either 0 (C = 0) or R_s, where `off` is exact
            let from_singular = if center == 0.0 { r - rs } else { off };
            let e = self.excess(r, from_singular);
            (r, off, e * (2.0 + e))
        };
        let rate = |s: f64| {
            let (_, off, v2) = state(s);
            off / libm::sqrt(v2)
        };
        let n = sampling.n_samples;
        let outputs: Vec<f64> = (1..n).map(|k| s_end * k as f64 / (n - 1) as f64).collect();
        let scale = rate(0.5 * s_end).abs() * s_end;
        let opts = OdeOptions::new(sampling.rel_tol, sampling.rel_tol * 1e-3 * scale);
        let sol = ode_solve(|s, _: &[f64; 1]| [rate(s)], [0.0], 0.0, &outputs, opts)?;

        let mut samples = Vec::with_capacity(n);
        let (r0, _, v0) = state(0.0);
        samples.push(Sample {
            t: 0.0,
            r: r0,
            v: -libm::sqrt(v0),
        });
        for (s, y) in sol.xs.iter().zip(&sol.ys) {
            let (r, _, v2) = state(*s);
            samples.push(Sample {
                t: y[0],
                r,
                v: -libm::sqrt(v2),
            });
        }
        let terminal_event = if sol.is_complete() {
            terminal
        } else {
            TerminalEvent::StepLimit
        };
        Ok(Trajectory {
            samples,
            terminal_event,
        })
    }

    // R = R_t − u². With e = k(R)·u², Ṙ² = u²·k(2 + e) and dτ/du = 2/sqrt(k(2 + e)),
    // regular at the turning point.
    fn fall_from_turning_point(&self, rt: f64, sampling: &ShellSampling) -> Result<Trajectory> {
        let rs = self.singular_radius();
        let gap = rt - rs;
        let stop_off = sampling.stop_fraction * rs.min(gap);
        let u_end = libm::sqrt(gap - stop_off);
        let state = |u: f64| {
            let d = u * u;
            let r = rt - d;
            let from_singular = gap - d;
            let k = (2.0 * rs - self.m) / (2.0 * r * from_singular);
            let e = k * d;
            (r, k, e, e * (2.0 + e))
        };
        let rate = |u: f64| {
            let (_, k, e, _) = state(u);
            2.0 / libm::sqrt(k * (2.0 + e))
        };
        let n = sampling.n_samples;
        let outputs: Vec<f64> = (1..n).map(|k| u_end * k as f64 / (n - 1) as f64).collect();
        let scale = rate(0.0) * u_end;
        let opts = OdeOptions::new(sampling.rel_tol, sampling.rel_tol * 1e-3 * scale);
        let sol = ode_solve(|u, _: &[f64; 1]| [rate(u)], [0.0], 0.0, &outputs, opts)?;

        let mut samples = Vec::with_capacity(n);
        samples.push(Sample { t: 0.0, r: rt, v: 0.0 });
        for (u, y) in sol.xs.iter().zip(&sol.ys) {
            let (r, _, _, v2) = state(*u);
            samples.push(Sample {
                t: y[0],
                r,
                v: -libm::sqrt(v2),
            });
        }
        let terminal_event = if sol.is_complete() {
            TerminalEvent::Bounce
        } else {
            TerminalEvent::StepLimit
        };
        Ok(Trajectory {
            samples,
            terminal_event,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BounceKind {
    /// `C > M²`: a true velocity zero at `C²/(2M(C − M²))`.
    TurningPoint,
    /// `0 < C ≤ M²`: no velocity zero; `Ṙ²` diverges at `C/(2M)`.
    SingularApproach,
    /// `C = 0`.
    NoBounce,
}

impl BounceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BounceKind::TurningPoint => "turning_point",
            BounceKind::SingularApproach => "singular_approach",
            BounceKind::NoBounce => "no_bounce",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BounceClassification {
    pub kind: BounceKind,
    /// Turning radius, singular radius, or 0 depending on `kind`.
    pub r_critical: f64,
    /// Root-found turning radius (turning-point case only).
    pub r_critical_root_found: Option<f64>,
    /// `C/(2M)`, reported in every case.
    pub r_min_c_over_2m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellSampling {
    pub n_samples: usize,
    /// Floor for the `C = 0` collapse.
    pub r_floor: Option<f64>,
    /// Relative distance from the end point at which integration stops.
    pub stop_fraction: f64,
    pub rel_tol: f64,
}

impl Default for ShellSampling {
    fn default() -> Self {
        Self {
            n_samples: 200,
            r_floor: None,
            stop_fraction: 1e-3,
            rel_tol: 1e-10,
        }
    }
}
