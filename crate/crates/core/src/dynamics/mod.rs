// SPDX-License-Identifier: Apache-2.0

//! Mirror dynamics on each Born-Oppenheimer branch, starting from the mirror
//! vacuum.
//!
//! Every branch Hamiltonian is quadratic, so the evolved vacuum is an exact
//! Gaussian ket ([`GaussianKet`]) and overlaps between branches have closed
//! forms. The complex pseudo-frequency carries the hyperbolic regime through
//! the same expressions.

mod echo;
mod ensemble;
mod fidelity;
mod gaussian;
mod propagator;

pub use echo::{
    branch_overlap, branch_overlap_coeffs, coherent_amplitude, coherent_amplitude_coeffs, evaluate_echo,
    evaluate_echo_coeffs, loschmidt_echo, loschmidt_echo_coeffs, loschmidt_echo_coherent,
    loschmidt_echo_coherent_coeffs, loschmidt_echo_printed, loschmidt_echo_printed_coeffs, mirror_state,
    mirror_state_coeffs, EchoEvaluation, MirrorState,
};
pub use ensemble::{branch_purity, BranchEnsemble, NORMALIZATION_TOL};
pub use fidelity::{fidelity, fidelity_coeffs, fidelity_convergence, fidelity_exact, fidelity_exact_coeffs};
pub use gaussian::GaussianKet;
pub use propagator::{
    heisenberg_propagator, heisenberg_propagator_coeffs, quadrature_variance, quadrature_variance_coeffs,
    quadrature_variance_printed, quadrature_variance_printed_coeffs, HeisenbergPropagator,
};
