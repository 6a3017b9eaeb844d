// SPDX-License-Identifier: Apache-2.0

use optomech::core_model::EffectiveCoeffs;
use optomech::dynamics::{quadrature_variance_coeffs, quadrature_variance_printed_coeffs};
use optomech::fock_oracle::{
    build_mirror_hamiltonian_from_coeffs, check_tail, converged_series, variance_x, ConvergenceOptions, FockSpace,
    Propagator, StateVector,
};
use optomech::SystemParams;

use super::par_rows;
use crate::config::{RunConfig, Tolerances};
use crate::error::CliResult;
use crate::output::{Cell, CsvSeries};

pub fn run(config: &RunConfig) -> CliResult<CsvSeries> {
    config.require_branches(1, "variance")?;
    let grid = config.require_time_grid("variance")?;
    let coeffs = config.coeffs(&config.params)?.remove(0);
    let times = config.times(&grid);
    let mut header = vec!["t", "var_x", "var_x_printed"];
    if config.oracle {
        header.push("var_x_oracle");
    }
    let oracle = if config.oracle {
        Some(oracle_variance(&config.params, &coeffs, &times, &config.tolerances)?)
    } else {
        None
    };
    let indices: Vec<usize> = (0..times.len()).collect();
    let mut table = CsvSeries::new("variance", config, &header);
    table.rows = par_rows(&indices, |&i| {
        let t = times[i];
        let mut row = vec![
            Cell::Num(t),
            quadrature_variance_coeffs(&coeffs, t)?.into(),
            quadrature_variance_printed_coeffs(&coeffs, t)?.into(),
        ];
        if let Some(o) = &oracle {
            row.push(o[i].into());
        }
        Ok(row)
    })?;
    Ok(table)
}

/// `⟨Δx²⟩` on the whole grid from truncated Fock evolution, with the cutoff
/// doubled until the series settles.
pub(crate) fn oracle_variance(
    params: &SystemParams,
    coeffs: &EffectiveCoeffs,
    times: &[f64],
    tol: &Tolerances,
) -> CliResult<Vec<f64>> {
    let series = |cutoff: usize| -> optomech::Result<Vec<f64>> {
        let space = FockSpace::single(cutoff)?;
        let prop = Propagator::new(&build_mirror_hamiltonian_from_coeffs(coeffs, &space)?)?;
        let vacuum = StateVector::vacuum(&space);
        times
            .iter()
            .map(|&t| {
                let psi = prop.evolve(&vacuum, t)?;
                check_tail(&psi, &space, tol.tail)?;
                variance_x(&psi, params, &space)
            })
            .collect()
    };
    let opts = ConvergenceOptions::new(32.min(tol.max_cutoff), tol.convergence).with_max_cutoff(tol.max_cutoff);
    Ok(converged_series(series, opts)?.value)
}
