//! Command-line front end: config files, subcommands and report writers.

pub mod commands;
pub mod config;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::Reading;
pub use commands::RunOptions;
use config::{ConfigError, ExperimentConfig, OutputConfig, OutputFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_TAIL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "summakit",
    version,
    about = "Absolute matrix summability experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate summability factor conditions as ratio sequences.
    Check(RunArgs),
    /// Tabulate a transform and its |A|_k profile for one series.
    Transform(RunArgs),
    /// Replay the probe, decomposition and operator constructions.
    Verify(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Experiment config (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Output file; overrides `output.path`. Standard output when neither is set.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report format; overrides `output.format`.
    #[arg(long)]
    pub format: Option<OutputFormat>,
    /// Evaluate the literal alternative forms of four formulas.
    #[arg(long)]
    pub strict_paper_mode: bool,
    /// Tail cutoff for infinite sums; overrides `tail.cutoff`.
    #[arg(long)]
    pub tail_cutoff: Option<usize>,
    /// Seed for random series in `verify`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl RunArgs {
    fn options(&self) -> RunOptions {
        RunOptions {
            reading: if self.strict_paper_mode {
                Reading::Literal
            } else {
                Reading::Consistent
            },
            seed: self.seed,
        }
    }

    fn load(&self) -> Result<ExperimentConfig, ConfigError> {
        let mut config = ExperimentConfig::load(&self.config)?;
        if let Some(cutoff) = self.tail_cutoff {
            let warn_threshold = config
                .tail
                .as_ref()
                .map_or(crate::TailSpec::DEFAULT_WARN, |t| t.warn_threshold);
            config.tail = Some(config::TailConfig {
                cutoff: Some(cutoff),
                warn_threshold,
            });
        }
        if let Some(format) = self.format {
            config.output.format = format;
        }
        if let Some(out) = &self.out {
            config.output.path = Some(out.display().to_string());
        }
        Ok(config)
    }
}

/// Run a parsed command line and return the process exit status.
pub fn run(cli: Cli) -> i32 {
    let args = match &cli.command {
        Command::Check(a) | Command::Transform(a) | Command::Verify(a) => a,
    };
    let config = match args.load() {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let opts = args.options();
    match cli.command {
        Command::Check(_) => cmd_check(config, opts),
        Command::Transform(_) => cmd_transform(config, opts),
        Command::Verify(_) => cmd_verify(config, opts),
    }
}

/// Condition reports to `output.path` (standard output when unset).
pub fn cmd_check(config: ExperimentConfig, opts: RunOptions) -> i32 {
    let meta = commands::metadata("check", &config, opts);
    let output = config.output.clone();
    match commands::run_check(config, opts) {
        Ok(reports) => emit(&commands::check_table(&reports), &output, meta, true),
        Err(e) => fail(&e),
    }
}

/// Transform table to `output.path` (standard output when unset).
pub fn cmd_transform(config: ExperimentConfig, opts: RunOptions) -> i32 {
    let meta = commands::metadata("transform", &config, opts);
    let output = config.output.clone();
    match commands::run_transform(config) {
        Ok(table) => emit(&table, &output, meta, true),
        Err(e) => fail(&e),
    }
}

/// Verification table; exit status 1 when any check fails.
pub fn cmd_verify(config: ExperimentConfig, opts: RunOptions) -> i32 {
    let meta = commands::metadata("verify", &config, opts);
    let output = config.output.clone();
    match commands::run_verify(config, opts) {
        Ok((table, ok)) => emit(&table, &output, meta, ok),
        Err(e) => fail(&e),
    }
}

fn emit(table: &report::Table, output: &OutputConfig, meta: serde_json::Value, ok: bool) -> i32 {
    let text = table.render(output.format, meta);
    match &output.path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {path}: {e}");
                return EXIT_VERIFY_FAILED;
            }
        }
        None => print!("{text}"),
    }
    if ok {
        EXIT_OK
    } else {
        eprintln!("verification failed");
        EXIT_VERIFY_FAILED
    }
}

fn fail(e: &ConfigError) -> i32 {
    eprintln!("error: {e}");
    e.exit_code()
}
