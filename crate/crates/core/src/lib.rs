// SPDX-License-Identifier: Apache-2.0

//! Atom-assisted cavity optomechanics.
//!
//! A gas of two-level atoms inside a Fabry-Pérot cavity dresses the cavity
//! photon into two polariton modes. In the adiabatic (Born-Oppenheimer) limit
//! each polariton occupation pair `(n_A, n_B)` exerts its own quadratic
//! potential on the movable end mirror, so the mirror evolves along a
//! branch-dependent squeezed-coherent path.
//!
//! The crate is split into three layers:
//!
//! * [`core_model`]: static quantities (mixing angle, polariton frequencies,
//!   BO potentials, effective-Hamiltonian coefficients, regimes, Bogoliubov
//!   coefficients).
//! * [`dynamics`]: closed-form time evolution of the mirror on each branch
//!   (Gaussian states, Loschmidt echo, fidelity, Heisenberg propagator,
//!   quadrature variance, reduced-state purity).
//! * [`fock_oracle`]: brute-force truncated Fock-space Hamiltonians and exact
//!   evolution by dense eigendecomposition, used to validate everything above.
//!
//! All frequencies are angular (rad/s, or units of the mirror frequency in
//! scaled mode) with ħ = 1.

pub mod core_model;
pub mod dynamics;
pub mod error;
pub mod fock_oracle;

pub use core_model::{BogoliubovCoeffs, EffectiveCoeffs, GammaForm, ModeIndex, PolaritonBasis, Regime, SystemParams};
pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
