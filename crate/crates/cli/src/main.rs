//! `gk`: solve, generate, verify and decompose graph-knapsack instances.
//!
//! Exit codes: 0 on success, 1 when a decision instance is infeasible or a
//! witness fails verification, 2 on usage or input errors.

mod generate;
mod solve;

use clap::{Parser, Subcommand};
use graph_knapsack::decomposition::{build_nice_decomposition, elimination_order_minfill, validate_nice_decomposition};
use graph_knapsack::model::VerifyFailure;
use graph_knapsack::{verify_solution, Instance};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn input(context: impl std::fmt::Display, err: impl std::fmt::Display) -> Self {
        CliError::Input(format!("{context}: {err}"))
    }
}

#[derive(Parser, Debug)]
#[command(name = "gk", version, about = "Knapsack problems with connectivity and path constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance and print the report as JSON.
    Solve(solve::SolveArgs),
    /// Write a reduction gadget or a random instance.
    Generate(generate::GenerateArgs),
    /// Check a witness against an instance.
    Verify(VerifyArgs),
    /// Print the nice tree decomposition used by the DP solvers.
    Decompose(DecomposeArgs),
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    /// JSON list of vertex ids.
    #[arg(long)]
    witness: PathBuf,
}

#[derive(clap::Args, Debug)]
struct DecomposeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Up to two vertices kept in every bag, comma separated.
    #[arg(long, value_delimiter = ',')]
    pin: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    Instance::from_json(&read_file(path)?).map_err(|e| CliError::input(path.display(), e))
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output types serialise");
    text.push('\n');
    text
}

fn verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let inst = load_instance(&args.input)?;
    let witness: Vec<usize> =
        serde_json::from_str(&read_file(&args.witness)?).map_err(|e| CliError::input(args.witness.display(), e))?;
    let report = verify_solution(&inst, &witness);
    if report.reason == Some(VerifyFailure::UnknownVertex) {
        let bad = witness.iter().find(|&&u| u >= inst.n()).copied().unwrap_or_default();
        return Err(CliError::Input(format!("witness names vertex {bad}, instance has {} vertices", inst.n())));
    }
    print!("{}", to_json(&report));
    Ok(if report.ok { 0 } else { 1 })
}

fn decompose(args: &DecomposeArgs) -> Result<u8, CliError> {
    let inst = load_instance(&args.input)?;
    let order = elimination_order_minfill(&inst, args.seed);
    let nd = build_nice_decomposition(&inst, &order, &args.pin).map_err(|e| CliError::Usage(e.to_string()))?;
    validate_nice_decomposition(&inst, &nd)
        .map_err(|e| CliError::Input(format!("internal decomposition error: {e}")))?;
    log::info!("decomposition of width {} with {} nodes", nd.width, nd.nodes.len());
    print!("{}", to_json(&nd));
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("GK_LOG", "warn")).format_timestamp(None).init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve(args) => solve::run(args),
        Command::Generate(args) => generate::run(args),
        Command::Verify(args) => verify(args),
        Command::Decompose(args) => decompose(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(2)
        }
    }
}
