use std::path::PathBuf;
use std::process::ExitCode;

use casimir_cli::{output, read_scenario, run_scenario, run_sweep, write_run, write_sweep, CliResult};
use clap::{Parser, Subcommand};

/// Casimir pressure balances, cavity filling and shell collapse.
#[derive(Parser)]
#[command(name = "casimir", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scenario; prints the summary JSON.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        /// Also write summary.json (and trajectory.csv) into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the scenario's sweep block and write one CSV row per point.
    Sweep {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the pinned physical constants as JSON.
    Constants,
}

fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Run { scenario, out } => {
            let file = read_scenario(&scenario)?;
            let result = run_scenario(&file)?;
            if let Some(dir) = out {
                for path in write_run(&result, &dir)? {
                    eprintln!("wrote {}", path.display());
                }
            }
            print!("{}", result.summary);
        }
        Command::Sweep { scenario, out } => {
            let file = read_scenario(&scenario)?;
            let csv = run_sweep(&file)?;
            write_sweep(&csv, &out)?;
            eprintln!("wrote {}", out.display());
        }
        Command::Constants => print!("{}", output::constants_json()),
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
