// SPDX-License-Identifier: Apache-2.0

use optomech::core_model::critical_threshold;

use super::par_rows;
use crate::config::{RunConfig, SweepParameter};
use crate::error::{CliError, CliResult};
use crate::output::{Cell, CsvSeries};

/// Hyperbolic threshold on `n_A − n_B` and the regime of every configured
/// branch along a sweep.
pub fn run(config: &RunConfig) -> CliResult<CsvSeries> {
    let sweep = config.require_sweep("regime-map", &[])?;
    if sweep.parameter == SweepParameter::X {
        return Err(CliError::Config("regime-map cannot sweep x".into()));
    }
    if config.branches.is_empty() {
        return Err(CliError::Config("regime-map needs at least one branch".into()));
    }
    let labels: Vec<String> = config
        .branches
        .iter()
        .map(|n| format!("regime_{}_{}", n.n_a, n.n_b))
        .collect();
    let mut header = vec![sweep.parameter.name(), "n_a_minus_n_b_threshold"];
    header.extend(labels.iter().map(String::as_str));
    let values = config.sweep_values(&sweep);
    let mut table = CsvSeries::new("regime-map", config, &header);
    table.rows = par_rows(&values, |&v| {
        let params = config.params_at(sweep.parameter, v)?;
        let mut row = vec![Cell::Num(v), critical_threshold(&params).into()];
        for c in config.coeffs(&params)? {
            row.push(c.regime.as_str().into());
        }
        Ok(row)
    })?;
    Ok(table)
}
