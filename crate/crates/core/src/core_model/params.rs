// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical constants of the atom-cavity-mirror system.
///
/// Frequencies are angular. `mass` is expressed in units where ħ = 1, so the
/// mirror zero-point displacement is `1/sqrt(2 mass omega_m)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Atomic transition frequency Ω₀.
    pub omega_0: f64,
    /// Cavity mode frequency Ω_C.
    pub omega_c: f64,
    /// Bare mirror frequency Ω_M.
    pub omega_m: f64,
    pub mass: f64,
    /// Radiation-pressure coupling, frequency per unit mirror displacement.
    pub eta: f64,
    /// Collective atom-photon coupling G.
    pub g_total: f64,
    /// Number of atoms. Informational: uniform coupling gives G² = N|g|².
    pub n_atoms: u64,
}

impl SystemParams {
    pub fn new(
        omega_0: f64,
        omega_c: f64,
        omega_m: f64,
        mass: f64,
        eta: f64,
        g_total: f64,
        n_atoms: u64,
    ) -> Result<Self> {
        let params = Self {
            omega_0,
            omega_c,
            omega_m,
            mass,
            eta,
            g_total,
            n_atoms,
        };
        params.validate()?;
        Ok(params)
    }

    /// Scaled units: `mass = omega_m = 1`, a single atom.
    pub fn scaled(omega_0: f64, omega_c: f64, eta: f64, g_total: f64) -> Result<Self> {
        Self::new(omega_0, omega_c, 1.0, 1.0, eta, g_total, 1)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("omega_0", self.omega_0),
            ("omega_c", self.omega_c),
            ("omega_m", self.omega_m),
            ("mass", self.mass),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "{name} must be finite and > 0, got {value}"
                )));
            }
        }
        if !(self.g_total.is_finite() && self.g_total >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "g_total must be finite and >= 0, got {}",
                self.g_total
            )));
        }
        if !self.eta.is_finite() {
            return Err(Error::InvalidParams(format!("eta must be finite, got {}", self.eta)));
        }
        if self.n_atoms == 0 {
            return Err(Error::InvalidParams("n_atoms must be >= 1".into()));
        }
        Ok(())
    }

    /// Ω₀ − Ω_C.
    pub fn detuning(&self) -> f64 {
        self.omega_0 - self.omega_c
    }

    /// Polariton splitting at the mirror equilibrium, sqrt((Ω₀ − Ω_C)² + 4G²).
    pub fn splitting(&self) -> f64 {
        self.detuning().hypot(2.0 * self.g_total)
    }

    /// Per-atom coupling |g| = G / sqrt(N).
    pub fn single_atom_coupling(&self) -> f64 {
        self.g_total / (self.n_atoms as f64).sqrt()
    }

    /// Zero-point displacement of the bare mirror, 1/sqrt(2 m Ω_M).
    pub fn zero_point_length(&self) -> f64 {
        (2.0 * self.mass * self.omega_m).sqrt().recip()
    }
}

/// Polariton occupation pair labelling a Born-Oppenheimer branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeIndex {
    pub n_a: u32,
    pub n_b: u32,
}

impl ModeIndex {
    pub const VACUUM: ModeIndex = ModeIndex { n_a: 0, n_b: 0 };

    pub const fn new(n_a: u32, n_b: u32) -> Self {
        Self { n_a, n_b }
    }

    /// n_B + n_A.
    pub fn total(&self) -> f64 {
        f64::from(self.n_a) + f64::from(self.n_b)
    }

    /// n_B − n_A.
    pub fn imbalance(&self) -> f64 {
        f64::from(self.n_b) - f64::from(self.n_a)
    }
}

impl std::fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.n_a, self.n_b)
    }
}
