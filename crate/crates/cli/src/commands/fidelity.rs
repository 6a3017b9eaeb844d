// SPDX-License-Identifier: Apache-2.0

use optomech::core_model::{EffectiveCoeffs, Regime};
use optomech::dynamics::{fidelity_coeffs, fidelity_exact_coeffs};
use optomech::fock_oracle::ConvergenceOptions;

use super::par_rows;
use crate::config::{RunConfig, SweepParameter};
use crate::error::CliResult;
use crate::output::{Cell, CsvSeries};

/// Ground-state fidelity along a parameter sweep. Rows where either branch
/// has no ground state (hyperbolic or critical) are written as NaN.
pub fn run(config: &RunConfig) -> CliResult<CsvSeries> {
    config.require_branches(2, "fidelity")?;
    let sweep = config.require_sweep(
        "fidelity",
        &[
            SweepParameter::OmegaM,
            SweepParameter::Omega0,
            SweepParameter::OmegaC,
            SweepParameter::Mass,
            SweepParameter::Eta,
            SweepParameter::GTotal,
        ],
    )?;
    let mut header = vec![sweep.parameter.name(), "F_nm"];
    if config.oracle {
        header.push("F_exact");
    }
    let tol = &config.tolerances;
    let opts = ConvergenceOptions::new(32, tol.convergence).with_max_cutoff(tol.max_cutoff);
    let values = config.sweep_values(&sweep);
    let mut table = CsvSeries::new("fidelity", config, &header);
    table.rows = par_rows(&values, |&v| {
        let params = config.params_at(sweep.parameter, v)?;
        let coeffs = config.coeffs(&params)?;
        let (cn, cm) = (&coeffs[0], &coeffs[1]);
        let defined = has_ground_state(cn) && has_ground_state(cm);
        let mut row = vec![Cell::Num(v)];
        row.push(if defined { fidelity_coeffs(cn, cm)? } else { f64::NAN }.into());
        if config.oracle {
            row.push(
                if defined {
                    fidelity_exact_coeffs(cn, cm, opts)?
                } else {
                    f64::NAN
                }
                .into(),
            );
        }
        Ok(row)
    })?;
    Ok(table)
}

fn has_ground_state(c: &EffectiveCoeffs) -> bool {
    c.regime == Regime::Oscillatory
}
