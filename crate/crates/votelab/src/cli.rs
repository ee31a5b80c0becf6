//! Command-line surface: flag parsing, config-file merging, and dispatch.
//!
//! Flags override config-file values, which override per-command defaults.
//! The resolved manifest fully determines the run; worker count only
//! changes how fast it finishes.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::ballots::ingest_ballots;
use crate::dropout::{run_study1, run_study2, run_study3};
use crate::error::{Error, Result};
use crate::harness::{run_table1_study, StudyConfig};
use crate::report::{evaluate_election, DropoutConfig, OutputFormat, RunReport};
use crate::spatial::StudyType;

#[derive(Debug, Parser)]
#[command(
    name = "votelab",
    version,
    about = "Monte Carlo laboratory for rated voting systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finalist study: score MJ, MR, QB, and QM against centrism
    Table1(StudyArgs),
    /// Dropout study: strategies for a Condorcet winner's withdrawal
    Dropout1(CommonArgs),
    /// Dropout study: strategies inside a Condorcet cycle
    Dropout2(CommonArgs),
    /// Dropout study: minimax winner against the cycle challenger
    Dropout3(CommonArgs),
    /// Evaluate every rule on a ballot file
    Election(ElectionArgs),
}

#[derive(Debug, Args)]
pub struct StudyArgs {
    /// Grade pipeline: 1 raw, 2 rounded, 3 noisy, 4 noisy rounded
    #[arg(long = "type", value_name = "N")]
    pub study_type: Option<u8>,
    /// Candidates per election
    #[arg(long)]
    pub candidates: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args, Default)]
pub struct CommonArgs {
    /// Voters per election
    #[arg(long)]
    pub voters: Option<usize>,
    /// Kept trials to accumulate
    #[arg(long)]
    pub trials: Option<u64>,
    /// Master seed; every run with the same seed and settings is identical
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores); never changes results
    #[arg(long)]
    pub workers: Option<usize>,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// TOML config file; flags given here win over its values
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ElectionArgs {
    /// Ballot CSV: header row of candidate names, one grade row per voter
    pub ballots: PathBuf,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

/// Config-file counterpart of the flags, all optional.
#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(rename = "type")]
    study_type: Option<u8>,
    candidates: Option<usize>,
    voters: Option<usize>,
    trials: Option<u64>,
    seed: Option<u64>,
    workers: Option<usize>,
    out: Option<PathBuf>,
    format: Option<OutputFormat>,
}

fn load_config(path: &Path) -> Result<FileConfig> {
    let fail = |reason: String| Error::ConfigFormat { path: path.to_path_buf(), reason };
    let text = std::fs::read_to_string(path).map_err(|e| fail(e.to_string()))?;
    toml::from_str(&text).map_err(|e| fail(e.to_string()))
}

/// A fully resolved run: what to compute and where to put it.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub task: Task,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Table1(StudyConfig),
    Dropout1(DropoutConfig),
    Dropout2(DropoutConfig),
    Dropout3(DropoutConfig),
    Election { ballots: PathBuf },
}

const DEFAULT_SEED: u64 = 1;

fn default_workers() -> usize {
    std::thread::available_parallelism().map(usize::from).unwrap_or(1)
}

/// Resolves flags against the optional config file and the defaults.
pub fn parse_manifest(cli: Cli) -> Result<RunManifest> {
    match cli.command {
        Command::Table1(args) => {
            let file = args.common.config.as_deref().map(load_config).transpose()?;
            let file = file.unwrap_or_default();
            let study_type = StudyType::from_number(
                args.study_type.or(file.study_type).unwrap_or(1),
            )?;
            let config = StudyConfig {
                study_type,
                candidates: args.candidates.or(file.candidates).unwrap_or(5),
                n_voters: args.common.voters.or(file.voters).unwrap_or(100),
                target_kept_trials: args.common.trials.or(file.trials).unwrap_or(200_000),
                master_seed: args.common.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
                workers: args.common.workers.or(file.workers).unwrap_or_else(default_workers),
            };
            Ok(RunManifest {
                task: Task::Table1(config),
                out: args.common.out.or(file.out),
                format: args.common.format.or(file.format).unwrap_or(OutputFormat::Csv),
            })
        }
        Command::Dropout1(args) => dropout_manifest(args, 100_000, Task::Dropout1),
        Command::Dropout2(args) => dropout_manifest(args, 10_000, Task::Dropout2),
        Command::Dropout3(args) => dropout_manifest(args, 10_000, Task::Dropout3),
        Command::Election(args) => Ok(RunManifest {
            task: Task::Election { ballots: args.ballots },
            out: args.out,
            format: args.format.unwrap_or(OutputFormat::Csv),
        }),
    }
}

fn dropout_manifest(
    args: CommonArgs,
    default_trials: u64,
    task: fn(DropoutConfig) -> Task,
) -> Result<RunManifest> {
    let file = args.config.as_deref().map(load_config).transpose()?.unwrap_or_default();
    let config = DropoutConfig {
        n_voters: args.voters.or(file.voters).unwrap_or(75),
        target_kept_trials: args.trials.or(file.trials).unwrap_or(default_trials),
        master_seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        workers: args.workers.or(file.workers).unwrap_or_else(default_workers),
    };
    Ok(RunManifest {
        task: task(config),
        out: args.out.or(file.out),
        format: args.format.or(file.format).unwrap_or(OutputFormat::Csv),
    })
}

/// Runs the manifest's task to completion.
pub fn execute(manifest: &RunManifest) -> Result<RunReport> {
    Ok(match &manifest.task {
        Task::Table1(config) => {
            RunReport::Table1 { config: *config, result: run_table1_study(config)? }
        }
        Task::Dropout1(c) => RunReport::Dropout1 {
            config: *c,
            result: run_study1(c.n_voters, c.target_kept_trials, c.master_seed, c.workers)?,
        },
        Task::Dropout2(c) => RunReport::Dropout2 {
            config: *c,
            result: run_study2(c.n_voters, c.target_kept_trials, c.master_seed, c.workers)?,
        },
        Task::Dropout3(c) => RunReport::Dropout3 {
            config: *c,
            result: run_study3(c.n_voters, c.target_kept_trials, c.master_seed, c.workers)?,
        },
        Task::Election { ballots } => {
            let parsed = ingest_ballots(ballots)?;
            RunReport::Election {
                source: ballots.display().to_string(),
                result: evaluate_election(&parsed),
            }
        }
    })
}

/// Writes the report to the manifest's output path, or standard output.
pub fn write_report(report: &RunReport, manifest: &RunManifest) -> Result<()> {
    match &manifest.out {
        Some(path) => report.write_to_path(manifest.format, path),
        None => report.write_to(manifest.format, &mut std::io::stdout().lock()),
    }
}
