//! Closed-form Casimir surface pressures and forces.
//!
//! Sign convention: positive pressures point outward (repulsive for a
//! cavity or shell), negative ones inward.

use core::f64::consts::PI;

use crate::units::{CASIMIR_SHELL_COEFFICIENT, C_LIGHT, HBAR, HBAR_C};
use crate::{Error, Result};

/// Above this |ε−1| (or |μ−1|) the dilute expansions are flagged.
pub const DILUTE_WARNING: f64 = 0.05;
/// Hard cap on |ε−1| (or |μ−1|) for the dilute formulas.
pub const DILUTE_CAP: f64 = 0.1;

/// Correction coefficient in the isorefractive bracket `1 + 0.311 μ/(μ+1)²`.
pub const ISOREFRACTIVE_BRACKET: f64 = 0.311;

fn check_dilute(excess: f64) -> Result<()> {
    if !excess.is_finite() || excess.abs() > DILUTE_CAP {
        return Err(Error::Domain("diluteness parameter must satisfy |x - 1| <= 0.1"));
    }
    Ok(())
}

/// Dilute nonmagnetic dielectric ball in vacuum, regularized by a
/// time-splitting cutoff `tau`.
///
/// `epsilon_minus_1` may carry either sign; only its square enters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallScenario {
    radius_a: f64,
    epsilon_minus_1: f64,
    tau: f64,
}

impl BallScenario {
    pub fn new(radius_a: f64, epsilon_minus_1: f64, tau: f64) -> Result<Self> {
        if !(radius_a.is_finite() && radius_a > 0.0) {
            return Err(Error::Domain("ball radius must be positive"));
        }
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::Domain(
                "time-splitting cutoff tau must be positive (tau = 0 diverges)",
            ));
        }
        check_dilute(epsilon_minus_1)?;
        Ok(Self {
            radius_a,
            epsilon_minus_1,
            tau,
        })
    }

    pub fn radius_a(&self) -> f64 {
        self.radius_a
    }

    pub fn epsilon_minus_1(&self) -> f64 {
        self.epsilon_minus_1
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Cutoff in units of the radius, `δ = τc/a`.
    pub fn delta(&self) -> f64 {
        self.tau * C_LIGHT / self.radius_a
    }

    /// True when ε−1 exceeds the range where the dilute expansion is trustworthy.
    pub fn beyond_dilute(&self) -> bool {
        self.epsilon_minus_1.abs() > DILUTE_WARNING
    }
}

/// Total surface stress on the dilute ball,
/// `−(ε−1)²ħc/(256π a⁴) · [16/δ³ + 1/4]`.
pub fn ball_surface_stress(s: &BallScenario) -> f64 {
    let e2 = s.epsilon_minus_1 * s.epsilon_minus_1;
    let a4 = libm::pow(s.radius_a, 4.0);
    let d = s.delta();
    -(e2 * HBAR_C / (256.0 * PI * a4)) * (16.0 / (d * d * d) + 0.25)
}

/// Cutoff-dependent part of the ball stress, `−(ε−1)²ħ/(16π a c² τ³)`.
pub fn ball_cutoff_stress(s: &BallScenario) -> f64 {
    let e2 = s.epsilon_minus_1 * s.epsilon_minus_1;
    let t3 = s.tau * s.tau * s.tau;
    -(e2 / (16.0 * PI)) * HBAR / (s.radius_a * C_LIGHT * C_LIGHT * t3)
}

/// Canonical member of the reciprocal pair `{μ, 1/μ}`.
///
/// Floating-point reciprocation is not an involution, so the orbit
/// `μ, fl(1/μ), fl(1/fl(1/μ)), ...` is followed until it closes into a
/// two-cycle and the smaller cycle element is returned. `μ` and `fl(1/μ)`
/// reach the same cycle, which makes the reciprocal symmetry bit-exact.
fn reciprocal_canonical(mu: f64) -> f64 {
    let mut z = mu;
    for _ in 0..16 {
        let w = 1.0 / z;
        let back = 1.0 / w;
        if back == z {
            return z.min(w);
        }
        z = back;
    }
    z.min(1.0 / z)
}

/// Material factor `((μ−1)/(μ+1))² · [1 + 0.311 μ/(μ+1)²]` of the
/// isorefractive pressure; invariant under `μ -> 1/μ`.
pub fn material_factor(mu12: f64) -> Result<f64> {
    if !(mu12.is_finite() && mu12 > 0.0) {
        return Err(Error::Domain("permeability ratio must be positive"));
    }
    let m = reciprocal_canonical(mu12);
    let ratio = (m - 1.0) / (m + 1.0);
    Ok(ratio * ratio * (1.0 + ISOREFRACTIVE_BRACKET * m / ((m + 1.0) * (m + 1.0))))
}

/// Casimir pressure on a spherical interface of radius `r` between two
/// isorefractive media with permeability ratio `mu12`,
/// `(0.09235/8π)(ħc/r⁴) f(μ₁₂)`. Outward, never negative.
pub fn isorefractive_surface_pressure(mu12: f64, r: f64) -> Result<f64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Domain("radius must be positive"));
    }
    let f = material_factor(mu12)?;
    Ok(CASIMIR_SHELL_COEFFICIENT / (8.0 * PI) * HBAR_C / libm::pow(r, 4.0) * f)
}

fn check_annulus(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && a > 0.0) {
        return Err(Error::Domain("annulus radii must be positive and finite"));
    }
    if a >= b {
        return Err(Error::Domain("annulus requires inner radius < outer radius"));
    }
    Ok(())
}

/// Dilute-limit radial Casimir force per unit solid angle on the fluid in a
/// cone through the annulus, `(0.09235 ħc/32π)(μ−1)²(1/a² + 1/b²)`.
///
/// The isorefractive bracket is dropped; see [`cone_force_exact`].
pub fn cone_force_dilute(a: f64, b: f64, mu: f64) -> Result<f64> {
    check_annulus(a, b)?;
    check_dilute(mu - 1.0)?;
    let dm = mu - 1.0;
    Ok(CASIMIR_SHELL_COEFFICIENT * HBAR_C / (32.0 * PI) * dm * dm * (1.0 / (a * a) + 1.0 / (b * b)))
}

/// The same cone force summed from the full isorefractive pressure,
/// `a²P(a) + b²P(b)`.
pub fn cone_force_exact(a: f64, b: f64, mu: f64) -> Result<f64> {
    check_annulus(a, b)?;
    Ok(a * a * isorefractive_surface_pressure(mu, a)? + b * b * isorefractive_surface_pressure(mu, b)?)
}

/// How the material factor of the cavity Casimir constant is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaterialFactor {
    /// `f = 1`.
    Unity,
    /// `f = material_factor(mu12)`.
    Isorefractive { mu12: f64 },
}

/// Casimir constant `C = 0.09235 ħc f(μ₁₂)` (J·m), normalized so that the
/// surface pressure is `C/(8πR⁴)`.
pub fn hole_pressure_constant(factor: MaterialFactor) -> Result<f64> {
    let f = match factor {
        MaterialFactor::Unity => 1.0,
        MaterialFactor::Isorefractive { mu12 } => material_factor(mu12)?,
    };
    Ok(CASIMIR_SHELL_COEFFICIENT * HBAR_C * f)
}

/// Cavity surface pressure `C/(8πR⁴)`.
pub fn hole_surface_pressure(c: f64, r: f64) -> Result<f64> {
    if !(c.is_finite() && c >= 0.0) {
        return Err(Error::Domain("Casimir constant must be non-negative"));
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Domain("radius must be positive"));
    }
    Ok(c / (8.0 * PI * libm::pow(r, 4.0)))
}

/// `ρ dε/dρ = (ε−1)(ε+2)/3` for a nonpolar medium obeying Clausius-Mossotti.
pub fn clausius_mossotti_density_derivative(epsilon: f64) -> Result<f64> {
    if !(epsilon.is_finite() && epsilon >= 1.0) {
        return Err(Error::Domain("permittivity must be >= 1"));
    }
    Ok((epsilon - 1.0) * (epsilon + 2.0) / 3.0)
}

/// Isorefractive spherical annulus `a < r < b` held by surface tension `sigma`.
///
/// Only the permeability ratio is stored; the permittivity is `1/mu12`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusScenario {
    inner_a: f64,
    outer_b: f64,
    mu12: f64,
    sigma: f64,
}

impl AnnulusScenario {
    pub fn new(inner_a: f64, outer_b: f64, mu12: f64, sigma: f64) -> Result<Self> {
        check_annulus(inner_a, outer_b)?;
        if !(mu12.is_finite() && mu12 > 0.0) {
            return Err(Error::Domain("permeability ratio must be positive"));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::Domain("surface tension must be positive"));
        }
        Ok(Self {
            inner_a,
            outer_b,
            mu12,
            sigma,
        })
    }

    pub fn inner_a(&self) -> f64 {
        self.inner_a
    }

    pub fn outer_b(&self) -> f64 {
        self.outer_b
    }

    pub fn mu12(&self) -> f64 {
        self.mu12
    }

    pub fn epsilon(&self) -> f64 {
        1.0 / self.mu12
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Inward surface-tension force per unit solid angle, `2σ(a + b)`.
    pub fn surface_tension_force(&self) -> f64 {
        2.0 * self.sigma * (self.inner_a + self.outer_b)
    }

    /// Net outward force per unit solid angle using the dilute cone force.
    pub fn net_outward_force(&self) -> Result<f64> {
        Ok(cone_force_dilute(self.inner_a, self.outer_b, self.mu12)? - self.surface_tension_force())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn ball_vacuum_limit_is_zero() {
        let s = BallScenario::new(1e-10, 0.0, 1e-19).unwrap();
        assert_eq!(ball_surface_stress(&s), 0.0);
        assert_eq!(ball_cutoff_stress(&s), 0.0);
    }

    #[test]
    fn ball_reference_values() {
        let s = BallScenario::new(1e-10, 0.01, 1e-19).unwrap();
        let total = ball_surface_stress(&s);
        let cutoff = ball_cutoff_stress(&s);
        assert!(rel(total, -2.335e10) < 1e-3, "{total}");
        assert!(rel(cutoff, -2.334e10) < 1e-3, "{cutoff}");
        let finite = -(1e-4) * HBAR_C / (1024.0 * PI * 1e-40);
        assert!(((total - cutoff) - finite).abs() < 1e-9 * total.abs());
    }

    #[test]
    fn ball_rejects_zero_cutoff_and_dense_media() {
        assert!(BallScenario::new(1e-10, 0.01, 0.0).is_err());
        assert!(BallScenario::new(0.0, 0.01, 1e-19).is_err());
        assert!(BallScenario::new(1e-10, 0.2, 1e-19).is_err());
        assert!(BallScenario::new(1e-10, 0.07, 1e-19).unwrap().beyond_dilute());
        assert!(!BallScenario::new(1e-10, 0.03, 1e-19).unwrap().beyond_dilute());
    }

    #[test]
    fn cutoff_fraction_vanishes_for_large_delta() {
        let frac = |tau: f64| {
            let s = BallScenario::new(1e-9, 0.01, tau).unwrap();
            ball_cutoff_stress(&s) / ball_surface_stress(&s)
        };
        assert!(frac(1e-19) > 0.99);
        assert!(frac(1e-14) < 1e-6);
    }

    #[test]
    fn isorefractive_homogeneous_and_reference() {
        assert_eq!(isorefractive_surface_pressure(1.0, 1e-6).unwrap(), 0.0);
        let p = isorefractive_surface_pressure(2.0, 1e-6).unwrap();
        let oracle = 0.09235 / (8.0 * PI) * HBAR_C / 1e-24 / 9.0 * (1.0 + 0.311 * 2.0 / 9.0);
        assert!(rel(p, oracle) < 1e-14);
        assert!(rel(p, 1.38e-5) < 5e-3, "{p}");
        assert_eq!(p, isorefractive_surface_pressure(0.5, 1e-6).unwrap());
    }

    #[test]
    fn reciprocal_orbit_closes() {
        let mut x = 0.1_f64;
        while x < 10.0 {
            let y = 1.0 / x;
            assert_eq!(
                reciprocal_canonical(x).to_bits(),
                reciprocal_canonical(y).to_bits(),
                "{x}"
            );
            x = x * 1.000_013_7 + 1e-9;
        }
    }

    #[test]
    fn isorefractive_domain() {
        assert!(isorefractive_surface_pressure(0.0, 1.0).is_err());
        assert!(isorefractive_surface_pressure(2.0, 0.0).is_err());
        assert!(isorefractive_surface_pressure(-2.0, 1.0).is_err());
    }

    #[test]
    fn cone_force_reference() {
        assert_eq!(cone_force_dilute(1e-3, 1e-2, 1.0).unwrap(), 0.0);
        let f = cone_force_dilute(1e-3, 1e-2, 1.01).unwrap();
        assert!(rel(f, 2.93e-27) < 2e-3, "{f}");
        assert!(cone_force_dilute(1e-2, 1e-3, 1.01).is_err());
        assert!(cone_force_dilute(1e-3, 1e-3, 1.01).is_err());
        assert!(cone_force_dilute(1e-3, 1e-2, 1.2).is_err());
    }

    #[test]
    fn dilute_cone_force_tracks_exact_sum() {
        for mu in [1.01, 0.99] {
            let dilute = cone_force_dilute(2e-6, 7e-6, mu).unwrap();
            let exact = cone_force_exact(2e-6, 7e-6, mu).unwrap();
            assert!(rel(dilute, exact) < 0.09, "{mu}: {dilute} vs {exact}");
        }
    }

    #[test]
    fn unity_casimir_constant() {
        let c = hole_pressure_constant(MaterialFactor::Unity).unwrap();
        assert!(rel(c, 2.92e-27) < 1e-3, "{c}");
        assert_eq!(
            hole_pressure_constant(MaterialFactor::Isorefractive { mu12: 1.0 }).unwrap(),
            0.0
        );
    }

    #[test]
    fn hole_pressure_reference_and_scaling() {
        assert_eq!(hole_surface_pressure(0.0, 1.0).unwrap(), 0.0);
        let p = hole_surface_pressure(2.92e-27, 1e-3).unwrap();
        assert!(rel(p, 1.162e-16) < 1e-3, "{p}");
        let q = hole_surface_pressure(2.92e-27, 0.5e-3).unwrap();
        assert!(rel(q, 16.0 * p) < 1e-15);
        assert!(hole_surface_pressure(1.0, 0.0).is_err());
        assert!(hole_surface_pressure(-1.0, 1.0).is_err());
    }

    #[test]
    fn clausius_mossotti() {
        assert_eq!(clausius_mossotti_density_derivative(1.0).unwrap(), 0.0);
        assert!(rel(clausius_mossotti_density_derivative(2.0).unwrap(), 4.0 / 3.0) < 1e-15);
        let x = 1e-3;
        let d = clausius_mossotti_density_derivative(1.0 + x).unwrap();
        assert!(rel(d, x * (1.0 + x / 3.0)) < 1e-12);
        assert!(clausius_mossotti_density_derivative(0.9).is_err());
    }

    #[test]
    fn annulus_scenario_forces() {
        let s = AnnulusScenario::new(1e-9, 1e-8, 1.01, 0.073).unwrap();
        assert!((s.epsilon() * s.mu12() - 1.0).abs() < 1e-15);
        assert!(rel(s.surface_tension_force(), 2.0 * 0.073 * 1.1e-8) < 1e-15);
        assert!(s.net_outward_force().unwrap() < 0.0);
        assert!(AnnulusScenario::new(1e-8, 1e-9, 1.01, 0.073).is_err());
        assert!(AnnulusScenario::new(1e-9, 1e-8, 1.01, 0.0).is_err());
    }
}
