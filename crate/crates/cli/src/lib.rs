//! Command-line front end for `ordunit`: loads JSON descriptors, runs the
//! checkers and reports verdicts as text or JSON.
//!
//! Exit status: 0 when every check passes, 1 on a property violation, 2 on
//! malformed input.

pub mod args;
pub mod commands;
pub mod error;
pub mod gallery;
pub mod report;

use std::time::Instant;

pub use args::{Cli, Command, Format};
pub use error::CliError;
pub use report::{Check, Report};

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    if cli.samples == 0 {
        return Err(CliError::Input("--samples must be positive".into()));
    }
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Check { pairs, normed } => commands::run_check(cli, pairs.as_deref(), *normed),
        Command::Norm { points } => commands::run_norm(cli, points),
        Command::Extend { partial, unit_value, targets, rule } => {
            commands::run_extend(cli, partial.as_deref(), *unit_value, targets, rule)
        }
        Command::Openness { at, epsilon, delta, budget, targets } => {
            commands::run_openness(cli, at.as_deref(), *epsilon, *delta, *budget, *targets)
        }
        Command::Compact { capacities, min_length, truncation } => {
            commands::run_compact(cli, capacities, *min_length, *truncation)
        }
        Command::Gallery => gallery::run_gallery(cli),
    }?;
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}
