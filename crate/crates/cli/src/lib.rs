//! Scenario-file front end for `casimir-core`: JSON scenarios in, JSON
//! summaries and CSV trajectories or sweeps out.

mod error;
pub mod evaluate;
pub mod output;
pub mod scenario;

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

pub use error::{CliError, CliResult};
pub use evaluate::{evaluate, Evaluation, Scalar};
pub use scenario::{Scenario, ScenarioFile};

pub const SUMMARY_FILE: &str = "summary.json";
pub const TRAJECTORY_FILE: &str = "trajectory.csv";

pub fn read_scenario(path: &Path) -> CliResult<ScenarioFile> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    ScenarioFile::parse(&text)
}

fn write(path: PathBuf, contents: &str) -> CliResult<()> {
    fs::write(&path, contents).map_err(|source| CliError::Write { path, source })
}

/// Rendered outputs of a single run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub summary: String,
    pub trajectory_csv: Option<String>,
}

pub fn run_scenario(file: &ScenarioFile) -> CliResult<RunOutput> {
    let eval = evaluate(&file.scenario)?;
    Ok(RunOutput {
        summary: output::summary_json(file.inputs_echo(), &eval),
        trajectory_csv: eval
            .trajectory
            .as_ref()
            .map(|t| output::trajectory_csv(t, eval.trajectory_extra.as_ref())),
    })
}

/// Writes `summary.json` and, for dynamic kinds, `trajectory.csv` into
/// `dir` (created if needed). Returns the paths written.
pub fn write_run(out: &RunOutput, dir: &Path) -> CliResult<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = vec![dir.join(SUMMARY_FILE)];
    write(dir.join(SUMMARY_FILE), &out.summary)?;
    if let Some(csv) = &out.trajectory_csv {
        write(dir.join(TRAJECTORY_FILE), csv)?;
        written.push(dir.join(TRAJECTORY_FILE));
    }
    Ok(written)
}

/// Evaluates every sweep point (in parallel) and renders the CSV in sweep
/// order. Failing points become rows with a filled `error` column.
pub fn run_sweep(file: &ScenarioFile) -> CliResult<String> {
    let sweep = file
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Invalid("scenario has no \"sweep\" block".into()))?;
    let points = sweep.points();
    let rows: Vec<output::SweepRow> = points
        .par_iter()
        .map(|&x| {
            let row = file
                .with_field(&sweep.field, x)
                .and_then(|s| evaluate(&s))
                .map(|e| e.values)
                .map_err(|e| e.to_string());
            (x, row)
        })
        .collect();
    Ok(output::sweep_csv(&sweep.field, file.scenario.kind(), &rows))
}

pub fn write_sweep(csv: &str, path: &Path) -> CliResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|source| CliError::Write {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    write(path.to_path_buf(), csv)
}
