//! Text renderings: summary JSON, trajectory CSV and sweep CSV.
//!
//! Numbers in CSV files use 12 significant digits in scientific notation;
//! JSON numbers use the shortest representation that round-trips.

use std::fmt::Write as _;

use casimir_core::units::{
    casimir_constant_geometric, casimir_constant_si, CASIMIR_SHELL_COEFFICIENT, C_LIGHT, G_NEWTON, HBAR, HBAR_C,
    PLANCK_AREA,
};
use casimir_core::Trajectory;
use serde_json::{json, Map, Value};

use crate::evaluate::{columns, Evaluation, Scalar};

pub fn sci(x: f64) -> String {
    format!("{x:.11e}")
}

fn csv_cell(v: &Scalar) -> String {
    match v {
        Scalar::Num(x) => sci(*x),
        Scalar::Count(n) => n.to_string(),
        Scalar::Text(s) => (*s).to_string(),
        Scalar::Missing => String::new(),
    }
}

fn json_value(v: &Scalar) -> Value {
    match v {
        Scalar::Num(x) => json!(x),
        Scalar::Count(n) => json!(n),
        Scalar::Text(s) => json!(s),
        Scalar::Missing => Value::Null,
    }
}

pub fn summary_json(inputs: Value, eval: &Evaluation) -> String {
    let cols = columns(eval.kind);
    let mut results = Map::new();
    let mut units = Map::new();
    for ((name, unit), v) in cols.iter().zip(&eval.values) {
        results.insert((*name).to_string(), json_value(v));
        if !unit.is_empty() {
            units.insert((*name).to_string(), json!(unit));
        }
    }
    let doc = json!({
        "kind": eval.kind,
        "inputs": inputs,
        "results": results,
        "units": units,
        "notes": eval.notes,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("summary serializes");
    s.push('\n');
    s
}

/// `t,R,V` rows, with an optional extra column appended.
pub fn trajectory_csv(traj: &Trajectory, extra: Option<&(&'static str, Vec<f64>)>) -> String {
    let mut s = String::from("t,R,V");
    if let Some((name, _)) = extra {
        s.push(',');
        s.push_str(name);
    }
    s.push('\n');
    for (i, x) in traj.samples.iter().enumerate() {
        let _ = write!(s, "{},{},{}", sci(x.t), sci(x.r), sci(x.v));
        if let Some((_, col)) = extra {
            let _ = write!(s, ",{}", sci(col[i]));
        }
        s.push('\n');
    }
    s
}

/// One sweep row: the swept value and either a full evaluation or an
/// error message.
pub type SweepRow = (f64, Result<Vec<Scalar>, String>);

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn sweep_csv(field: &str, kind: &str, rows: &[SweepRow]) -> String {
    let cols = columns(kind);
    let mut s = String::new();
    s.push_str(field);
    for (name, _) in cols {
        s.push(',');
        s.push_str(name);
    }
    s.push_str(",error\n");
    for (x, row) in rows {
        s.push_str(&sci(*x));
        match row {
            Ok(values) => {
                for v in values {
                    s.push(',');
                    s.push_str(&csv_text(&csv_cell(v)));
                }
                s.push_str(",\n");
            }
            Err(msg) => {
                for _ in 0..cols.len() {
                    s.push(',');
                }
                s.push(',');
                s.push_str(&csv_text(msg));
                s.push('\n');
            }
        }
    }
    s
}

pub fn constants_json() -> String {
    let doc = json!({
        "hbar": HBAR,
        "c": C_LIGHT,
        "G": G_NEWTON,
        "hbar_c": HBAR_C,
        "planck_area": PLANCK_AREA,
        "casimir_shell_coefficient": CASIMIR_SHELL_COEFFICIENT,
        "casimir_constant_si": casimir_constant_si(),
        "casimir_constant_geometric": casimir_constant_geometric(),
        "units": {
            "hbar": "J s",
            "c": "m/s",
            "G": "m^3/(kg s^2)",
            "hbar_c": "J m",
            "planck_area": "m^2",
            "casimir_constant_si": "J m",
            "casimir_constant_geometric": "m^2",
        },
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("constants serialize");
    s.push('\n');
    s
}
