// SPDX-License-Identifier: Apache-2.0

//! Command-line front end for the `optomech` library.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::{execute, CommandKind};
use crate::config::{ConfigOverrides, RunConfig, UnitMode};
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "optomech",
    version,
    about = "Atom-assisted cavity optomechanics: spectra, echo, fidelity, variance and oracle checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output file; stdout when omitted and the config names none.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for row evaluation (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Interpret inputs in scaled units.
    #[arg(long, global = true, conflicts_with = "si")]
    pub scaled: bool,

    /// Interpret inputs in SI units (Hz, kg, s, m).
    #[arg(long, global = true)]
    pub si: bool,

    /// Add the Fock-space oracle column where a command supports it.
    #[arg(long, global = true)]
    pub oracle: bool,

    /// Override one config field, e.g. `--set params.omega_m=2`.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    pub set: Vec<String>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Polariton frequencies and mixing angle versus mirror displacement.
    Spectrum,
    /// Loschmidt echo between two branches on a time grid.
    Echo,
    /// Ground-state fidelity between two branches along a sweep.
    Fidelity,
    /// Position variance of one branch on a time grid.
    Variance,
    /// Hyperbolic threshold and branch regimes along a sweep.
    RegimeMap,
    /// Oracle suite and printed-formula comparison report.
    Validate,
}

impl Command {
    fn kind(self) -> CommandKind {
        match self {
            Command::Spectrum => CommandKind::Spectrum,
            Command::Echo => CommandKind::Echo,
            Command::Fidelity => CommandKind::Fidelity,
            Command::Variance => CommandKind::Variance,
            Command::RegimeMap => CommandKind::RegimeMap,
            Command::Validate => CommandKind::Validate,
        }
    }
}

/// Run one invocation. Output is written only after the whole command has
/// succeeded or produced a report.
pub fn run(cli: &Cli) -> CliResult<()> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config is required".into()))?;
    let adjust = ConfigOverrides {
        mode: if cli.si {
            Some(UnitMode::Si)
        } else if cli.scaled {
            Some(UnitMode::Scaled)
        } else {
            None
        },
        oracle: cli.oracle,
        set: cli.set.clone(),
    };
    let config = RunConfig::load(path, &adjust)?;
    let kind = cli.command.kind();
    let result = match cli.threads {
        Some(0) => return Err(CliError::Config("--threads must be >= 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?
            .install(|| execute(kind, &config)),
        None => execute(kind, &config),
    }?;
    let out = cli.out.as_deref().or(config.output.as_deref());
    output::emit(&result.text, out)?;
    for line in &result.messages {
        eprintln!("{line}");
    }
    match result.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
