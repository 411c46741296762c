mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = nschur::verify::SCHEMA_VERSION;

#[derive(Parser, Debug)]
#[command(name = "nschur", version, about = "N-Schur functions, finite Grassmannians and KP tau-function checks")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Seed for every randomized batch.
    #[arg(long, global = true, env = "NSCHUR_SEED", default_value_t = nschur::random::DEFAULT_SEED)]
    pub seed: u64,
    /// Numeric tolerance; suites fall back to their own default.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Instance count for randomized suites.
    #[arg(long, global = true)]
    pub count: Option<usize>,
    /// Truncation depth for pseudo-differential operators.
    #[arg(long, global = true, default_value_t = nschur::psido::DEFAULT_DEPTH)]
    pub depth: i64,
    /// Number of H_k blocks used by the pipeline.
    #[arg(long = "k", global = true, default_value_t = nschur::kp::pipeline::DEFAULT_K)]
    pub k: usize,
    /// Worker threads; results are ordered independently of scheduling.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the payload here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate f_S^N.
    Nschur(commands::NschurArgs),
    /// List virtual sequences in S_{k,n} or up to a weight.
    Enumerate(commands::EnumerateArgs),
    /// Pluecker relations and membership checks.
    #[command(subcommand)]
    Pluecker(commands::PlueckerCommand),
    /// Pseudo-differential operator calculus.
    #[command(subcommand)]
    Pdo(commands::PdoCommand),
    /// Hirota bilinear residual of a polynomial tau.
    Hirota(commands::HirotaArgs),
    /// KP residual, exact or sampled on the Airy example.
    Kp(commands::KpArgs),
    /// Run a verification suite.
    Verify(commands::VerifyArgs),
}

/// Failure classes with their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad input or configuration: exit 2.
    Config(String),
    /// `det H_0 = 0`: exit 3.
    Singular,
    /// A check ran and failed, or a numeric method broke down: exit 1.
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Singular => 3,
        }
    }
}

impl From<nschur::Error> for CliError {
    fn from(e: nschur::Error) -> Self {
        use nschur::Error as E;
        match e {
            E::SingularH0 => CliError::Singular,
            E::PoleNearSample { .. }
            | E::TruncationInsufficient { .. }
            | E::NonStabilizing { .. }
            | E::DomainExceeded(_)
            | E::DegenerateSubstitution => CliError::Failed(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) | CliError::Failed(m) => f.write_str(m),
            CliError::Singular => f.write_str("det H_0 vanishes"),
        }
    }
}

/// Payload of a finished command: JSON, text rendering and pass/fail.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub passed: bool,
}

fn emit(run: &RunArgs, out: &Outcome) -> Result<(), CliError> {
    let mut body = match run.format {
        Format::Json => serde_json::to_string_pretty(&out.json).map_err(|e| CliError::Config(e.to_string()))?,
        Format::Text => out.text.trim_end().to_string(),
    };
    body.push('\n');
    match &run.output {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Config(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(|e| CliError::Config(e.to_string())),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let run = &cli.run;
    match &cli.command {
        Command::Nschur(a) => commands::nschur(a, run),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Pluecker(c) => commands::pluecker(c),
        Command::Pdo(c) => commands::pdo(c, run),
        Command::Hirota(a) => commands::hirota(a),
        Command::Kp(a) => commands::kp(a, run),
        Command::Verify(a) => commands::verify(a, run),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| {
        if cli.run.jobs == 0 {
            return Err(CliError::Config("--jobs must be at least 1".into()));
        }
        if let Some(t) = cli.run.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Config(format!("--tolerance must be positive, got {t}")));
            }
        }
        if cli.run.depth < 1 {
            return Err(CliError::Config(format!("--depth must be at least 1, got {}", cli.run.depth)));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.run.jobs)
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?;
        let out = pool.install(|| dispatch(&cli))?;
        emit(&cli.run, &out)?;
        Ok(out.passed)
    })();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
