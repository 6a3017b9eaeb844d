// SPDX-License-Identifier: Apache-2.0

mod echo;
mod fidelity;
mod regime_map;
mod spectrum;
mod validate;
mod variance;

use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub use validate::{Finding, ValidationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Spectrum,
    Echo,
    Fidelity,
    Variance,
    RegimeMap,
    Validate,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Spectrum => "spectrum",
            CommandKind::Echo => "echo",
            CommandKind::Fidelity => "fidelity",
            CommandKind::Variance => "variance",
            CommandKind::RegimeMap => "regime-map",
            CommandKind::Validate => "validate",
        }
    }
}

/// Rendered output plus an optional failure to report after it is written.
#[derive(Debug)]
pub struct CommandOutput {
    pub text: String,
    /// Human-readable lines for stderr.
    pub messages: Vec<String>,
    pub failure: Option<CliError>,
}

impl CommandOutput {
    fn table(text: String) -> Self {
        Self {
            text,
            messages: Vec::new(),
            failure: None,
        }
    }
}

pub fn execute(kind: CommandKind, config: &RunConfig) -> CliResult<CommandOutput> {
    match kind {
        CommandKind::Spectrum => spectrum::run(config).map(|t| CommandOutput::table(t.render())),
        CommandKind::Echo => echo::run(config).map(|t| CommandOutput::table(t.render())),
        CommandKind::Fidelity => fidelity::run(config).map(|t| CommandOutput::table(t.render())),
        CommandKind::Variance => variance::run(config).map(|t| CommandOutput::table(t.render())),
        CommandKind::RegimeMap => regime_map::run(config).map(|t| CommandOutput::table(t.render())),
        CommandKind::Validate => validate::run(config).map(|r| r.into_output()),
    }
}

/// Evaluate `f` on every grid point concurrently, keeping grid order.
fn par_rows<T, R, F>(grid: &[T], f: F) -> CliResult<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> CliResult<R> + Sync + Send,
{
    grid.par_iter().map(f).collect()
}
