// SPDX-License-Identifier: Apache-2.0

use optomech::core_model::polariton_frequencies;

use super::par_rows;
use crate::config::{RunConfig, SweepParameter};
use crate::error::CliResult;
use crate::output::{Cell, CsvSeries};

/// Polariton frequencies and mixing angle along a sweep of the mirror
/// displacement.
pub fn run(config: &RunConfig) -> CliResult<CsvSeries> {
    let sweep = config.require_sweep("spectrum", &[SweepParameter::X])?;
    let xs = config.sweep_values(&sweep);
    let mut table = CsvSeries::new("spectrum", config, &["x", "omega_a", "omega_b", "theta"]);
    table.rows = par_rows(&xs, |&x| {
        let basis = polariton_frequencies(&config.params, x);
        Ok(vec![
            Cell::Num(x),
            config.freq_out(basis.omega_a).into(),
            config.freq_out(basis.omega_b).into(),
            basis.theta.into(),
        ])
    })?;
    Ok(table)
}
