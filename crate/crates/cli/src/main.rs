use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cbdiscrim::check::{run_check, ChannelFile};
use cbdiscrim::render::{self, OutputMode};
use cbdiscrim::report::run_discriminate;
use cbdiscrim::scenario::Scenario;
use cbdiscrim::sweep::{run_sweep, SweepSpec};
use cbdiscrim::verify::run_verify_paper;
use cbdiscrim::{resolve_config, CliError, Overrides};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

impl From<Output> for OutputMode {
    fn from(o: Output) -> OutputMode {
        match o {
            Output::Json => OutputMode::Json,
            Output::Csv => OutputMode::Csv,
            Output::Text => OutputMode::Text,
        }
    }
}

/// Minimum-error discrimination of coherence-breaking qubit channels.
#[derive(Debug, Parser)]
#[command(name = "cbdiscrim", version, about)]
struct Cli {
    /// Sampling seed; wins over CBDISCRIM_SEED and the scenario file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Optimizer grid points per axis.
    #[arg(long, global = true)]
    grid_points: Option<usize>,
    /// Optimizer convergence tolerance.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one scenario file and print the discrimination report.
    Discriminate { file: PathBuf },
    /// Evaluate a scenario over a one- or two-parameter grid.
    Sweep { file: PathBuf },
    /// Score every printed claim against computed values; always exits 0.
    VerifyPaper,
    /// Validate a channel file and test whether it breaks coherence.
    CheckCbc { file: PathBuf },
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn env_seed() -> Result<Option<u64>, CliError> {
    match std::env::var("CBDISCRIM_SEED") {
        Ok(text) => text.trim().parse::<u64>().map(Some).map_err(|_| {
            CliError::Input(format!(
                "CBDISCRIM_SEED is '{text}', expected an unsigned 64-bit integer"
            ))
        }),
        Err(_) => Ok(None),
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let flags = Overrides {
        seed: cli.seed,
        grid_points: cli.grid_points,
        tolerance: cli.tolerance,
    };
    let env = env_seed()?;
    let mode = OutputMode::from(cli.output);

    match &cli.command {
        Command::Discriminate { file } => {
            let scenario = Scenario::from_json(&read_file(file)?)?;
            let cfg = resolve_config(scenario.optimizer.as_ref(), &flags, env)?;
            let doc = run_discriminate(&scenario, &cfg)?;
            Ok(render::render_report(&doc, mode))
        }
        Command::Sweep { file } => {
            let spec = SweepSpec::from_json(&read_file(file)?)?;
            let cfg = resolve_config(spec.scenario.optimizer.as_ref(), &flags, env)?;
            let rows = run_sweep(&spec, &cfg)?;
            Ok(render::render_sweep(&spec, &rows, mode))
        }
        Command::VerifyPaper => {
            let cfg = resolve_config(None, &flags, env)?;
            let rows = run_verify_paper(&cfg)?;
            Ok(render::render_claims(&rows, mode))
        }
        Command::CheckCbc { file } => {
            let channel = ChannelFile::from_json(&read_file(file)?)?;
            let outcome = run_check(&channel)?;
            Ok(render::render_check(&outcome, mode))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
