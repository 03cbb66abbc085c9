//! `bracketflow`: command-line front end for the bracket flow laboratory.
//!
//! Exit codes: 0 success, 1 validation failure, 2 numerical failure.

mod commands;
mod target;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "bracketflow", version, about = "Bracket flow laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Membership report for a bracket file or scenario.
    Check {
        target: String,
    },
    /// Integrates the normalized bracket flow and writes the trajectory as CSV.
    Flow(FlowArgs),
    /// Soliton classification report.
    Classify {
        target: String,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Also run the trajectory-mode diagonality check up to this time.
        #[arg(long)]
        trajectory_t_end: Option<f64>,
    },
    /// Omega-limit report of a normalized flow.
    Limit(LimitArgs),
    /// Lists the built-in scenarios.
    Scenarios,
}

#[derive(Debug, Args)]
struct OdeArgs {
    #[arg(long, default_value = "none")]
    normalization: String,
    #[arg(long)]
    t_end: f64,
    #[arg(long, default_value_t = 1e-9)]
    rtol: f64,
    #[arg(long, default_value_t = 1e-12)]
    atol: f64,
    /// Blow-up threshold on the bracket norm.
    #[arg(long, default_value_t = 1e8)]
    blow_up: f64,
}

#[derive(Debug, Args)]
struct FlowArgs {
    /// Bracket files or scenarios (`name` or `name:p1,p2,...`).
    targets: Vec<String>,
    #[command(flatten)]
    ode: OdeArgs,
    /// Output CSV for a single target.
    #[arg(long, conflicts_with = "out_dir")]
    out: Option<std::path::PathBuf>,
    /// Output directory for several targets, one `<index>.csv` each.
    #[arg(long)]
    out_dir: Option<std::path::PathBuf>,
    /// JSON list of `{"name": .., "params": [..]}` scenarios, appended to the targets.
    #[arg(long)]
    params_file: Option<std::path::PathBuf>,
    /// Record a uniform grid of this many intervals instead of every step.
    #[arg(long)]
    samples: Option<usize>,
    /// Stop once the bracket is stationary.
    #[arg(long)]
    stop_on_convergence: bool,
    /// Worker threads for several targets.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Args)]
struct LimitArgs {
    target: String,
    #[command(flatten)]
    ode: OdeArgs,
    #[arg(long, default_value_t = 10)]
    tail: usize,
    #[arg(long, default_value_t = 1e-8)]
    cauchy_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    field_tol: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Check { target } => commands::check(&target),
        Command::Flow(args) => commands::flow(args),
        Command::Classify { target, out, trajectory_t_end } => commands::classify(&target, out, trajectory_t_end),
        Command::Limit(args) => commands::limit(args),
        Command::Scenarios => commands::scenarios(),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
