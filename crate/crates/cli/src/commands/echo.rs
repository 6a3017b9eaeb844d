// SPDX-License-Identifier: Apache-2.0

use optomech::dynamics::{loschmidt_echo_coeffs, loschmidt_echo_printed_coeffs};

use super::par_rows;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{Cell, CsvSeries};

pub fn run(config: &RunConfig) -> CliResult<CsvSeries> {
    config.require_branches(2, "echo")?;
    let grid = config.require_time_grid("echo")?;
    let coeffs = config.coeffs(&config.params)?;
    let (cn, cm) = (&coeffs[0], &coeffs[1]);
    let times = config.times(&grid);
    let mut table = CsvSeries::new("echo", config, &["t", "L_nm", "L_nm_printed", "regime_n", "regime_m"]);
    table.rows = par_rows(&times, |&t| {
        Ok(vec![
            Cell::Num(t),
            loschmidt_echo_coeffs(cn, cm, t)?.into(),
            loschmidt_echo_printed_coeffs(cn, cm, t)?.into(),
            cn.regime.as_str().into(),
            cm.regime.as_str().into(),
        ])
    })?;
    Ok(table)
}
