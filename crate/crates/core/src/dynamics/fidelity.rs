// SPDX-License-Identifier: Apache-2.0

use crate::core_model::{effective_coeffs, EffectiveCoeffs, ModeIndex, Regime, SystemParams};
use crate::error::{Error, Result};
use crate::fock_oracle::{
    build_mirror_hamiltonian_from_coeffs, check_tail, converged_with, overlap, ConvergenceOptions, FockSpace,
    Propagator, DEFAULT_TAIL_TOL,
};

fn ground_displacement(coeffs: &EffectiveCoeffs) -> Result<f64> {
    match coeffs.regime {
        Regime::Oscillatory => coeffs.displacement(),
        Regime::Critical => Err(Error::DegenerateFrequency {
            stiffness: coeffs.stiffness(),
        }),
        Regime::Hyperbolic => Err(Error::HyperbolicRegime {
            stiffness: coeffs.stiffness(),
        }),
    }
}

/// Ground-state fidelity `exp(−½ (d_n − d_m)²)`, which keeps the
/// displacements and drops the squeezing mismatch.
pub fn fidelity(params: &SystemParams, n: ModeIndex, m: ModeIndex) -> Result<f64> {
    fidelity_coeffs(&effective_coeffs(params, n)?, &effective_coeffs(params, m)?)
}

pub fn fidelity_coeffs(cn: &EffectiveCoeffs, cm: &EffectiveCoeffs) -> Result<f64> {
    let diff = ground_displacement(cn)? - ground_displacement(cm)?;
    Ok((-0.5 * diff * diff).exp())
}

/// Default convergence settings for [`fidelity_exact`].
pub fn fidelity_convergence() -> ConvergenceOptions {
    ConvergenceOptions::new(32, 1e-10)
}

/// `|⟨g_n|g_m⟩|` between ground states of the truncated branch Hamiltonians,
/// with the cutoff doubled until the value settles.
pub fn fidelity_exact(params: &SystemParams, n: ModeIndex, m: ModeIndex) -> Result<f64> {
    fidelity_exact_coeffs(
        &effective_coeffs(params, n)?,
        &effective_coeffs(params, m)?,
        fidelity_convergence(),
    )
}

pub fn fidelity_exact_coeffs(cn: &EffectiveCoeffs, cm: &EffectiveCoeffs, opts: ConvergenceOptions) -> Result<f64> {
    ground_displacement(cn)?;
    ground_displacement(cm)?;
    if cn.same_generator(cm) {
        return Ok(1.0);
    }
    let at_cutoff = |cutoff: usize| -> Result<f64> {
        let space = FockSpace::single(cutoff)?;
        let gn = Propagator::new(&build_mirror_hamiltonian_from_coeffs(cn, &space)?)?.ground_state();
        let gm = Propagator::new(&build_mirror_hamiltonian_from_coeffs(cm, &space)?)?.ground_state();
        check_tail(&gn, &space, DEFAULT_TAIL_TOL)?;
        check_tail(&gm, &space, DEFAULT_TAIL_TOL)?;
        Ok(overlap(&gn, &gm)?.norm().min(1.0))
    };
    Ok(converged_with(at_cutoff, opts)?.value)
}
