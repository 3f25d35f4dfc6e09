//! Static force balances between Casimir stresses and surface tension.
//!
//! Two balances are solved: the cutoff part of the dilute-ball stress
//! against the Laplace pressure `2σ/a` (which fixes the time-splitting
//! cutoff `τ` independently of the radius), and the net outward Casimir
//! force on an isorefractive annulus against surface tension on both faces.
//! Every closed form is cross-checked by a bracketed root find.

use core::f64::consts::PI;

use crate::numerics::{find_root, RootProblem};
use crate::pressures::{cone_force_dilute, DILUTE_CAP};
use crate::units::{C_LIGHT, HBAR, HBAR_C};
use crate::{Error, Result};

/// Bracket for the cutoff root find, seconds.
pub const TAU_BRACKET: (f64, f64) = (1e-25, 1e-10);
/// Bracket for radius root finds, meters.
pub const RADIUS_BRACKET: (f64, f64) = (1e-15, 1.0);
/// Relative bracket width at which root finds stop.
pub const ROOT_REL_TOL: f64 = 1e-13;
/// Smallest `b/a` for which the thin-inner-hole approximation is accepted.
pub const MIN_ASYMPTOTIC_RATIO: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauSolution {
    /// Closed-form cutoff, s.
    pub tau: f64,
    /// `tau * c`, m.
    pub tau_c: f64,
    pub sigma: f64,
    pub epsilon_minus_1: f64,
    /// Independent root-finder solution of the same balance, s.
    pub tau_root_found: f64,
}

impl TauSolution {
    /// Relative disagreement between closed form and root finder.
    pub fn route_disagreement(&self) -> f64 {
        ((self.tau_root_found - self.tau) / self.tau).abs()
    }
}

fn check_diluteness(excess: f64) -> Result<()> {
    if !excess.is_finite() || excess == 0.0 || excess.abs() > DILUTE_CAP {
        return Err(Error::Domain("diluteness parameter must satisfy 0 < |x - 1| <= 0.1"));
    }
    Ok(())
}

/// Inward cutoff stress per unit radius, `(ε−1)²ħ/(16π c² τ³)`
/// (the left side of the balance multiplied by `a`).
fn cutoff_stress_times_radius(tau: f64, epsilon_minus_1: f64) -> f64 {
    epsilon_minus_1 * epsilon_minus_1 * HBAR / (16.0 * PI * C_LIGHT * C_LIGHT * tau * tau * tau)
}

/// Relative imbalance `(cutoff − laplace)/laplace` at cutoff `tau`.
/// The radius cancels from both sides.
pub fn tau_balance_residual(tau: f64, sigma: f64, epsilon_minus_1: f64) -> f64 {
    (cutoff_stress_times_radius(tau, epsilon_minus_1) - 2.0 * sigma) / (2.0 * sigma)
}

/// Cutoff `τ` at which the cutoff part of the ball stress equals the
/// Laplace pressure: `τ = [(ε−1)²ħ/(32π σ c²)]^{1/3}`.
///
/// Takes no radius: the balance is radius independent.
pub fn solve_tau(sigma: f64, epsilon_minus_1: f64) -> Result<TauSolution> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::Domain("surface tension must be positive"));
    }
    check_diluteness(epsilon_minus_1)?;
    let e2 = epsilon_minus_1 * epsilon_minus_1;
    let tau = libm::cbrt(e2 * HBAR / (32.0 * PI * sigma * C_LIGHT * C_LIGHT));

    let problem = RootProblem::new(
        |t| tau_balance_residual(t, sigma, epsilon_minus_1),
        TAU_BRACKET.0,
        TAU_BRACKET.1,
        ROOT_REL_TOL,
    )?;
    let tau_root_found = find_root(&problem)?;

    Ok(TauSolution {
        tau,
        tau_c: tau * C_LIGHT,
        sigma,
        epsilon_minus_1,
        tau_root_found,
    })
}

/// Surface tension that exactly balances the dilute annulus cone force:
/// `σ = F/(2(a + b))`.
pub fn annulus_required_sigma(a: f64, b: f64, mu: f64) -> Result<f64> {
    let force = cone_force_dilute(a, b, mu)?;
    Ok(force / (2.0 * (a + b)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnulusVariant {
    /// Thin-hole formula with the rounded `1/(640π)` coefficient:
    /// `a = [ħc(μ−1)²/(640π σ κ)]^{1/3}`.
    Rounded640Pi,
    /// Full dilute balance at fixed `κ = b/a`, root-found.
    Exact,
}

/// Inner radius at which an annulus with `b = ratio_b_over_a · a` is in
/// equilibrium under surface tension `sigma`.
pub fn annulus_inner_radius(sigma: f64, mu: f64, ratio_b_over_a: f64, variant: AnnulusVariant) -> Result<f64> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::Domain("surface tension must be positive"));
    }
    if !(ratio_b_over_a.is_finite() && ratio_b_over_a >= MIN_ASYMPTOTIC_RATIO) {
        return Err(Error::Domain("b/a must be at least 5 for the thin-hole balance"));
    }
    if !(mu - 1.0).is_finite() || (mu - 1.0).abs() > DILUTE_CAP {
        return Err(Error::Domain("permeability must satisfy |mu - 1| <= 0.1"));
    }
    let (lo, hi) = RADIUS_BRACKET;
    if mu == 1.0 {
        // zero Casimir force: surface tension alone can never be balanced
        return Err(Error::NoSignChange { lo, hi });
    }
    let kappa = ratio_b_over_a;
    match variant {
        AnnulusVariant::Rounded640Pi => {
            let dm = mu - 1.0;
            let a = libm::cbrt(HBAR_C * dm * dm / (640.0 * PI * sigma * kappa));
            if !(lo..=hi).contains(&a) {
                return Err(Error::NoSignChange { lo, hi });
            }
            Ok(a)
        }
        AnnulusVariant::Exact => {
            // scaled by a² so the residual is a monotone cubic in a
            let residual = |a: f64| {
                let b = kappa * a;
                match cone_force_dilute(a, b, mu) {
                    Ok(f) => (f - 2.0 * sigma * (a + b)) * a * a,
                    Err(_) => f64::NAN,
                }
            };
            let problem = RootProblem::new(residual, lo, hi, ROOT_REL_TOL)?;
            find_root(&problem)
        }
    }
}

/// Both inner-radius variants side by side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusRadii {
    pub rounded_640pi: f64,
    pub exact: f64,
}

impl AnnulusRadii {
    pub fn solve(sigma: f64, mu: f64, ratio_b_over_a: f64) -> Result<Self> {
        Ok(Self {
            rounded_640pi: annulus_inner_radius(sigma, mu, ratio_b_over_a, AnnulusVariant::Rounded640Pi)?,
            exact: annulus_inner_radius(sigma, mu, ratio_b_over_a, AnnulusVariant::Exact)?,
        })
    }

    /// `|exact − rounded| / rounded`.
    pub fn relative_difference(&self) -> f64 {
        ((self.exact - self.rounded_640pi) / self.rounded_640pi).abs()
    }
}
