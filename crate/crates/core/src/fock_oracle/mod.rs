// SPDX-License-Identifier: Apache-2.0

//! Brute-force reference: Hamiltonians on truncated Fock spaces, exact
//! evolution by dense eigendecomposition, and a cutoff-doubling driver.
//!
//! Operators are assembled on `cutoff + TRUNCATION_MARGIN` levels per mode and
//! cropped afterwards, so products such as `c†c` and `x̂²` are exact on every
//! retained level.

mod convergence;
mod hamiltonians;
mod matrix;
mod observables;
mod space;
mod sparse;

pub use convergence::{converged, converged_series, converged_with, Converged, ConvergenceOptions, DEFAULT_MAX_CUTOFF};
pub use hamiltonians::{
    build_mirror_hamiltonian, build_mirror_hamiltonian_from_coeffs, build_mirror_hamiltonian_from_potential,
    build_tripartite_hamiltonian, build_two_mode_hamiltonian, number_operator, numeric_potential_expansion,
    position_operator, EXCITON_MODE, MIRROR_MODE, PHOTON_MODE, TRUNCATION_MARGIN,
};
pub use matrix::{evolve, overlap, OperatorMatrix, Propagator, StateVector, HERMITIAN_TOL};
pub use observables::{check_tail, tail_population, variance, variance_x, DEFAULT_TAIL_TOL};
pub use space::{FockSpace, DEFAULT_MEMORY_BUDGET, DEFAULT_TRIPARTITE_CUTOFF};
pub use sparse::SparseOp;
