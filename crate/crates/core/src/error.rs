// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// `Ω_M + 4α = 0`: displacement, ζ and the Bogoliubov transform are
    /// undefined on this branch.
    #[error("degenerate pseudo-frequency: Ω_M + 4α = {stiffness:e} is critical")]
    DegenerateFrequency { stiffness: f64 },

    /// `Ω_M + 4α < 0`: the branch has no normalizable ground state.
    #[error("hyperbolic regime: Ω_M + 4α = {stiffness:e} < 0")]
    HyperbolicRegime { stiffness: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Fock space of dimension {dim} needs {bytes} bytes, budget is {budget}")]
    MemoryBudgetExceeded { dim: usize, bytes: usize, budget: usize },

    #[error("cutoff {cutoff} too small: population {population:e} in the top level exceeds {tolerance:e}")]
    CutoffTooSmall {
        cutoff: usize,
        population: f64,
        tolerance: f64,
    },

    #[error("no convergence up to cutoff {cutoff}: last relative change {delta:e}, tolerance {tolerance:e}")]
    NonConvergence { cutoff: usize, delta: f64, tolerance: f64 },

    #[error("eigendecomposition failed for matrix of dimension {0}")]
    Eigensolver(usize),
}
