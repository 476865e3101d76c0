//! Experiment runner for `fuzzyfix-core`.
//!
//! Reads JSON experiment documents, resolves the named spaces, t-norms,
//! relations, comparators and maps, runs verifications and solves, and
//! writes JSON reports plus CSV traces. See [`run`] for the entry point.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod registry;

use clap::{Parser, Subcommand};
use commands::{Command, Job, RunOutcome};
use error::{CliError, CliResult, ExitClass};
use registry::Overrides;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "fuzzyfix", version, about = "Fixed-point experiments in fuzzy metric spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, clap::Args)]
pub struct CommonArgs {
    /// Experiment document (one object or an array for batch mode).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Seed for randomized point samples.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Overrides options.max_iterations.
    #[arg(long = "max-iter")]
    pub max_iter: Option<usize>,
    /// Overrides options.tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Check fuzzy-space axioms on sampled points.
    VerifySpace(CommonArgs),
    /// Check t-norm axioms, 1-boundary continuity and ordering.
    VerifyTnorm(CommonArgs),
    /// Run the audited Picard solver.
    Solve(CommonArgs),
    /// Extract a property-NC witness from a sequence.
    NcDemo(CommonArgs),
    /// Run every experiment under its own `command` field and write a summary.
    Report(CommonArgs),
}

fn load(args: &CommonArgs) -> CliResult<Vec<config::ExperimentConfig>> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::config("--config", format!("{}: {e}", args.config.display())))?;
    config::parse_document(&text)
}

/// Resolves every experiment before running any.
fn plan_all(args: &CommonArgs, fixed: Option<Command>) -> CliResult<Vec<Job>> {
    if let Some(tol) = args.tol {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(CliError::config("--tol", "must lie in (0, 1)"));
        }
    }
    let overrides = Overrides {
        seed: args.seed,
        max_iterations: args.max_iter,
        tolerance: args.tol,
    };
    load(args)?
        .iter()
        .map(|cfg| {
            let command = match fixed {
                Some(c) => c,
                None => {
                    let name = registry::required("command", &cfg.command)?;
                    Command::parse(name).ok_or_else(|| CliError::config("command", format!("unknown subcommand `{name}`")))?
                }
            };
            commands::plan(cfg, command, &overrides).map_err(|e| match e {
                CliError::Config { field, message } => CliError::config(format!("{}.{field}", cfg.name), message),
                other => other,
            })
        })
        .collect()
}

/// Runs jobs concurrently; results keep document order.
pub fn run_jobs(jobs: &[Job]) -> Vec<RunOutcome> {
    if jobs.len() == 1 {
        return vec![commands::execute(&jobs[0])];
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = jobs.iter().map(|job| scope.spawn(move || commands::execute(job))).collect();
        handles.into_iter().map(|h| h.join().expect("experiment thread panicked")).collect()
    })
}

fn write_outputs(out: &Path, outcomes: &[RunOutcome], summary: Option<&[u8]>) -> CliResult<()> {
    std::fs::create_dir_all(out)?;
    for artifact in outcomes.iter().flat_map(|o| &o.artifacts) {
        std::fs::write(out.join(&artifact.file), &artifact.contents)?;
    }
    if let Some(bytes) = summary {
        std::fs::write(out.join("summary.json"), bytes)?;
    }
    Ok(())
}

fn run_command(args: &CommonArgs, fixed: Option<Command>) -> CliResult<i32> {
    let jobs = plan_all(args, fixed)?;
    let outcomes = run_jobs(&jobs);
    let summary = match fixed {
        None => Some(output::json(&outcomes.iter().map(RunOutcome::summary).collect::<Vec<_>>())?),
        Some(_) => None,
    };
    write_outputs(&args.out, &outcomes, summary.as_deref())?;
    for o in &outcomes {
        let status = o.diagnostic.as_deref().unwrap_or("ok");
        eprintln!("{} [{}]: {} ({status})", o.name, o.command.name(), o.outcome);
    }
    Ok(outcomes.iter().map(|o| o.exit).max().unwrap_or(ExitClass::Success).code())
}

/// Parses `argv`, runs the subcommand and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitClass::Config.code() } else { 0 };
        }
    };
    let (args, fixed) = match &cli.command {
        CliCommand::VerifySpace(a) => (a, Some(Command::VerifySpace)),
        CliCommand::VerifyTnorm(a) => (a, Some(Command::VerifyTnorm)),
        CliCommand::Solve(a) => (a, Some(Command::Solve)),
        CliCommand::NcDemo(a) => (a, Some(Command::NcDemo)),
        CliCommand::Report(a) => (a, None),
    };
    match run_command(args, fixed) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_class().code()
        }
    }
}
