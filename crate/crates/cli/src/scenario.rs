//! Scenario files: one JSON object with a `kind` tag, kind-specific SI
//! inputs and an optional `sweep` block.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

pub const MAX_SWEEP_POINTS: usize = 1_000_000;
pub const MAX_SAMPLES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scenario {
    TauBalance(TauBalance),
    AnnulusBalance(AnnulusBalance),
    HoleFilling(HoleFilling),
    ShellCollapse(ShellCollapse),
}

/// Cutoff balance for a dilute dielectric ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauBalance {
    /// Surface tension, N/m.
    pub sigma: f64,
    pub epsilon_minus_1: f64,
}

/// Isorefractive annulus held by surface tension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnulusBalance {
    pub sigma: f64,
    pub mu: f64,
    pub ratio_b_over_a: f64,
}

/// Cavity filling. `casimir_constant` (J·m) wins; otherwise it is built
/// from `mu12`, or from a unit material factor when both are absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HoleFilling {
    pub a: f64,
    pub p_inf: f64,
    pub rho: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub casimir_constant: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu12: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_floor: Option<f64>,
}

/// Thin-shell collapse. SI inputs (kg, m, J·m) unless `geometric_units`
/// is set, in which case `mass` is in m and `casimir_constant` in m².
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShellCollapse {
    pub mass: f64,
    pub r_start: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub casimir_constant: Option<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub geometric_units: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_floor: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepScale {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub field: String,
    pub scale: SweepScale,
    pub from: f64,
    pub to: f64,
    pub count: usize,
}

impl Sweep {
    /// Sweep abscissae in order; both ends are hit exactly.
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|k| {
                if k == 0 {
                    return self.from;
                }
                if k + 1 == n {
                    return self.to;
                }
                let f = k as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear => self.from + (self.to - self.from) * f,
                    SweepScale::Log => (self.from.ln() + (self.to.ln() - self.from.ln()) * f).exp(),
                }
            })
            .collect()
    }
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::TauBalance(_) => "tau_balance",
            Scenario::AnnulusBalance(_) => "annulus_balance",
            Scenario::HoleFilling(_) => "hole_filling",
            Scenario::ShellCollapse(_) => "shell_collapse",
        }
    }
}

/// Numeric inputs a sweep may vary, per kind.
pub fn sweepable_fields(kind: &str) -> &'static [&'static str] {
    match kind {
        "tau_balance" => &["sigma", "epsilon_minus_1"],
        "annulus_balance" => &["sigma", "mu", "ratio_b_over_a"],
        "hole_filling" => &["a", "p_inf", "rho", "casimir_constant", "mu12", "r_floor"],
        "shell_collapse" => &["mass", "r_start", "casimir_constant", "r_floor"],
        _ => &[],
    }
}

/// A parsed scenario file. `base` keeps the raw object (without `sweep`)
/// so sweep points can be re-derived field by field.
#[derive(Debug, Clone)]
pub struct ScenarioFile {
    pub scenario: Scenario,
    pub sweep: Option<Sweep>,
    base: Map<String, Value>,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let Value::Object(mut base) = value else {
            return Err(CliError::Invalid("top level must be a JSON object".into()));
        };
        let sweep = match base.remove("sweep") {
            None => None,
            Some(v) => Some(serde_json::from_value::<Sweep>(v).map_err(|e| CliError::Invalid(format!("sweep: {e}")))?),
        };
        let scenario = scenario_from_object(&base)?;
        if let Some(sw) = &sweep {
            validate_sweep(sw, scenario.kind())?;
        }
        Ok(Self { scenario, sweep, base })
    }

    /// The scenario with `field` replaced by `value`.
    pub fn with_field(&self, field: &str, value: f64) -> CliResult<Scenario> {
        let mut obj = self.base.clone();
        let num =
            serde_json::Number::from_f64(value).ok_or_else(|| CliError::Invalid(format!("{field} must be finite")))?;
        obj.insert(field.to_string(), Value::Number(num));
        scenario_from_object(&obj)
    }

    /// Echo of the inputs exactly as parsed, for the summary.
    pub fn inputs_echo(&self) -> Value {
        let mut v = serde_json::to_value(&self.scenario).expect("scenario serializes");
        if let (Some(sw), Value::Object(m)) = (&self.sweep, &mut v) {
            m.insert("sweep".into(), serde_json::to_value(sw).expect("sweep serializes"));
        }
        v
    }
}

fn scenario_from_object(obj: &Map<String, Value>) -> CliResult<Scenario> {
    match obj.get("kind") {
        None => return Err(CliError::Invalid("missing \"kind\"".into())),
        Some(Value::String(_)) => {}
        Some(_) => return Err(CliError::Invalid("\"kind\" must be a string".into())),
    }
    for (k, v) in obj {
        if let Value::Number(n) = v {
            if !n.as_f64().is_some_and(f64::is_finite) {
                return Err(CliError::Invalid(format!("{k} must be a finite number")));
            }
        }
    }
    let scenario: Scenario =
        serde_json::from_value(Value::Object(obj.clone())).map_err(|e| CliError::Invalid(e.to_string()))?;
    check_scenario(&scenario)?;
    Ok(scenario)
}

fn check_samples(n: Option<usize>) -> CliResult<()> {
    match n {
        Some(n) if !(2..=MAX_SAMPLES).contains(&n) => {
            Err(CliError::Invalid(format!("n_samples must lie in [2, {MAX_SAMPLES}]")))
        }
        _ => Ok(()),
    }
}

fn check_scenario(s: &Scenario) -> CliResult<()> {
    match s {
        Scenario::HoleFilling(h) => {
            if h.casimir_constant.is_some() && h.mu12.is_some() {
                return Err(CliError::Invalid(
                    "give either casimir_constant or mu12, not both".into(),
                ));
            }
            check_samples(h.n_samples)
        }
        Scenario::ShellCollapse(sh) => check_samples(sh.n_samples),
        _ => Ok(()),
    }
}

fn validate_sweep(sw: &Sweep, kind: &str) -> CliResult<()> {
    let fields = sweepable_fields(kind);
    if !fields.contains(&sw.field.as_str()) {
        return Err(CliError::Invalid(format!(
            "sweep field \"{}\" is not a numeric input of {kind} (one of: {})",
            sw.field,
            fields.join(", ")
        )));
    }
    if !(2..=MAX_SWEEP_POINTS).contains(&sw.count) {
        return Err(CliError::Invalid(format!(
            "sweep count must lie in [2, {MAX_SWEEP_POINTS}]"
        )));
    }
    if !(sw.from.is_finite() && sw.to.is_finite()) {
        return Err(CliError::Invalid("sweep bounds must be finite".into()));
    }
    if sw.from == sw.to {
        return Err(CliError::Invalid("sweep range is empty (from == to)".into()));
    }
    if sw.scale == SweepScale::Log && !(sw.from > 0.0 && sw.to > 0.0) {
        return Err(CliError::Invalid("log sweep bounds must be positive".into()));
    }
    Ok(())
}
