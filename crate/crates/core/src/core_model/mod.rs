// SPDX-License-Identifier: Apache-2.0

//! Static model quantities: parameters, polariton basis, Born-Oppenheimer
//! potentials and the effective quadratic mirror Hamiltonian of each branch.

mod coeffs;
mod params;
mod polariton;
mod potential;

pub use coeffs::{
    bogoliubov, classify_regime, critical_threshold, effective_coeffs, effective_coeffs_with, gamma,
    printed_imaginary_condition, BogoliubovCoeffs, EffectiveCoeffs, GammaForm, Regime, DEFAULT_TOL_CRIT,
};
pub use params::{ModeIndex, SystemParams};
pub use polariton::{mixing_angle, polariton_frequencies, PolaritonBasis};
pub use potential::{bo_potential_exact, bo_potential_taylor, bo_taylor_coefficients, TaylorCoefficients};
