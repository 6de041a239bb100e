//! Command-line front end: argument parsing and one handler per pipeline
//! stage. Handlers write their tables under `--out` and a short summary to
//! the supplied writer.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use sanctions_migration::Execution;

pub mod commands;
mod inputs;
mod output;

pub use output::OutputDir;

#[derive(Debug, Parser)]
#[command(name = "sanctions-migration", version, about = "Growth collapse, emigration and sanctions scenario analytics")]
pub struct Cli {
    /// Scenario configuration (JSON). Defaults to the shipped configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Directory for output tables.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,

    /// Decimal places in display tables; full-precision copies are always written.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=10))]
    pub precision: u8,

    /// Run every stage on a single thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emigration series inputs.
    Data {
        #[command(subcommand)]
        action: DataAction,
    },
    /// Growth accounting and channel decomposition tables.
    Decompose(commands::decompose::DecomposeArgs),
    /// Emigration response to growth by sample.
    Estimate(commands::estimate::EstimateArgs),
    /// Sanctions scenarios.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
    /// Growth collapses.
    Collapse {
        #[command(subcommand)]
        action: CollapseAction,
    },
    /// Oil production dynamics.
    Oil {
        #[command(subcommand)]
        action: OilAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum DataAction {
    /// Build emigration flow series from stock and net-migration inputs.
    Build(commands::data::BuildArgs),
}

#[derive(Debug, Subcommand)]
pub enum ScenarioAction {
    /// Run every configured scenario and compare them.
    Run(commands::scenario::RunArgs),
}

#[derive(Debug, Subcommand)]
pub enum CollapseAction {
    /// Rank countries by their deepest peak-to-trough decline.
    Rank(commands::collapse::RankArgs),
}

#[derive(Debug, Subcommand)]
pub enum OilAction {
    /// Average monthly decline between breakpoints and discrete drops.
    Segments(commands::oil::SegmentArgs),
}

pub fn run(cli: &Cli, summary: &mut dyn Write) -> anyhow::Result<()> {
    let out = OutputDir::create(&cli.out, usize::from(cli.precision))?;
    match &cli.command {
        Command::Data { action: DataAction::Build(args) } => commands::data::cmd_data_build(args, &out, summary),
        Command::Decompose(args) => commands::decompose::cmd_decompose(args, &out, summary),
        Command::Estimate(args) => commands::estimate::cmd_estimate(args, &out, cli.execution(), summary),
        Command::Scenario { action: ScenarioAction::Run(args) } => {
            commands::scenario::cmd_scenario(args, cli.config.as_deref(), &out, cli.execution(), summary)
        }
        Command::Collapse { action: CollapseAction::Rank(args) } => {
            commands::collapse::cmd_collapse_rank(args, &out, cli.execution(), summary)
        }
        Command::Oil { action: OilAction::Segments(args) } => commands::oil::cmd_oil_segments(args, &out, summary),
    }
}
