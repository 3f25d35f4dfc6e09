//! Pinned physical constants (CODATA 2018) and SI <-> geometric conversions.

use crate::{Error, Result};

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light, m/s.
pub const C_LIGHT: f64 = 2.997_924_58e8;
/// Newtonian gravitational constant, m³/(kg·s²).
pub const G_NEWTON: f64 = 6.674_30e-11;
/// ħc, J·m.
pub const HBAR_C: f64 = HBAR * C_LIGHT;
/// ħG/c³, m².
pub const PLANCK_AREA: f64 = HBAR * G_NEWTON / (C_LIGHT * C_LIGHT * C_LIGHT);

/// Dimensionless coefficient of the perfectly conducting / isorefractive
/// spherical-shell Casimir pressure `C/(8πR⁴)` with `C = 0.09235 ħc`.
pub const CASIMIR_SHELL_COEFFICIENT: f64 = 0.09235;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub g: f64,
    pub hbar_c: f64,
    pub planck_area: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: Self = Self {
        hbar: HBAR,
        c: C_LIGHT,
        g: G_NEWTON,
        hbar_c: HBAR_C,
        planck_area: PLANCK_AREA,
    };
}

/// `G·M/c²`: a mass in kilograms as a geometric length in meters.
pub fn mass_to_geometric(mass_kg: f64) -> Result<f64> {
    if !(mass_kg.is_finite() && mass_kg > 0.0) {
        return Err(Error::Domain("mass must be positive and finite"));
    }
    Ok(mass_kg * (G_NEWTON / (C_LIGHT * C_LIGHT)))
}

/// Inverse of [`mass_to_geometric`].
pub fn geometric_to_mass(length_m: f64) -> f64 {
    length_m * (C_LIGHT * C_LIGHT / G_NEWTON)
}

/// An SI Casimir constant `C` (J·m, so that the pressure is `C/(8πR⁴)`)
/// expressed in geometric units (m²): `C·G/c⁴`.
pub fn casimir_si_to_geometric(c_si: f64) -> f64 {
    c_si * (G_NEWTON / (C_LIGHT * C_LIGHT * C_LIGHT * C_LIGHT))
}

/// `0.09235 ħc` in geometric units, i.e. `0.09235 ħG/c³` in m².
pub fn casimir_constant_geometric() -> f64 {
    CASIMIR_SHELL_COEFFICIENT * PLANCK_AREA
}

/// `0.09235 ħc` in J·m.
pub fn casimir_constant_si() -> f64 {
    CASIMIR_SHELL_COEFFICIENT * HBAR_C
}
