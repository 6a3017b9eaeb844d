// SPDX-License-Identifier: Apache-2.0

use super::{ModeIndex, SystemParams};

/// Polariton potential on the mirror for branch `n`, without expansion.
pub fn bo_potential_exact(params: &SystemParams, n: ModeIndex, x: f64) -> f64 {
    let shifted = params.omega_0 + params.omega_c + params.eta * x;
    let gap = (params.omega_0 - params.omega_c - params.eta * x).hypot(2.0 * params.g_total);
    0.5 * shifted * n.total() + 0.5 * gap * n.imbalance()
}

/// Second-order expansion of the branch potential about `x = 0`:
/// `V(x) ≈ constant + linear·x + quadratic·x²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorCoefficients {
    pub constant: f64,
    pub linear: f64,
    pub quadratic: f64,
}

impl TaylorCoefficients {
    pub fn eval(&self, x: f64) -> f64 {
        self.constant + x * (self.linear + x * self.quadratic)
    }
}

pub fn bo_taylor_coefficients(params: &SystemParams, n: ModeIndex) -> TaylorCoefficients {
    let detuning = params.detuning();
    let gap = params.splitting();
    let g = params.g_total;
    let imbalance = n.imbalance();

    let constant = 0.5 * (params.omega_0 + params.omega_c) * n.total() + 0.5 * gap * imbalance;
    // Without atoms at exact resonance the gap |Ω₀ − Ω_C − ηx| has a kink at
    // x = 0; take the symmetric derivative there.
    let tilt = if gap > 0.0 { detuning / gap } else { 0.0 };
    let linear = 0.5 * params.eta * (n.total() - tilt * imbalance);
    let quadratic = if g == 0.0 || params.eta == 0.0 || imbalance == 0.0 {
        0.0
    } else {
        g * g * params.eta * params.eta * imbalance / gap.powi(3)
    };

    TaylorCoefficients {
        constant,
        linear,
        quadratic,
    }
}

/// Constant + linear + quadratic approximation of [`bo_potential_exact`].
pub fn bo_potential_taylor(params: &SystemParams, n: ModeIndex, x: f64) -> f64 {
    bo_taylor_coefficients(params, n).eval(x)
}
