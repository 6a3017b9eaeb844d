// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::TAU;

use crate::core_model::{EffectiveCoeffs, Regime};
use crate::error::{Error, Result};
use crate::C64;

const I: C64 = C64::new(0.0, 1.0);

/// `K · exp(½ s c†² + ξ c†) |0⟩`, stored through `ln K` so that strongly
/// squeezed or displaced states stay representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianKet {
    pub log_norm: C64,
    pub s: C64,
    pub xi: C64,
}

/// Real trigonometric kernels of the branch motion, analytic in `Ω²`:
/// `cos Ωt`, `sin(Ωt)/Ω` and `1 − cos Ωt`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Kernels {
    pub cos: f64,
    pub sinc: f64,
    pub one_minus_cos: f64,
}

pub(crate) fn kernels(coeffs: &EffectiveCoeffs, t: f64) -> Result<Kernels> {
    let omega_sq = coeffs.pseudo_freq_sq();
    match coeffs.regime {
        Regime::Critical => Err(Error::DegenerateFrequency {
            stiffness: coeffs.stiffness(),
        }),
        Regime::Oscillatory => {
            let w = omega_sq.sqrt();
            let half = (0.5 * w * t).sin();
            Ok(Kernels {
                cos: (w * t).cos(),
                sinc: (w * t).sin() / w,
                one_minus_cos: 2.0 * half * half,
            })
        }
        Regime::Hyperbolic => {
            let k = (-omega_sq).sqrt();
            let half = (0.5 * k * t).sinh();
            Ok(Kernels {
                cos: (k * t).cosh(),
                sinc: (k * t).sinh() / k,
                one_minus_cos: -2.0 * half * half,
            })
        }
    }
}

impl GaussianKet {
    /// The bare vacuum.
    pub fn vacuum() -> Self {
        Self {
            log_norm: C64::new(0.0, 0.0),
            s: C64::new(0.0, 0.0),
            xi: C64::new(0.0, 0.0),
        }
    }

    /// `exp(−i H t)|0⟩` for the branch Hamiltonian described by `coeffs`,
    /// phase included.
    pub fn evolved_vacuum(coeffs: &EffectiveCoeffs, t: f64) -> Result<Self> {
        let k = kernels(coeffs, t)?;
        let stiffness = coeffs.stiffness();
        let d = coeffs.beta / stiffness;
        let a = coeffs.omega_m + 2.0 * coeffs.alpha;
        let b = 2.0 * coeffs.alpha;

        // Heisenberg coefficients at −t.
        let u = C64::new(k.cos, a * k.sinc);
        let v = C64::new(0.0, b * k.sinc);
        let w = C64::new(-d * k.one_minus_cos, coeffs.beta * k.sinc);

        let s = -v / u;
        let xi = -w / u;

        let ground = coeffs.gamma - coeffs.beta * coeffs.beta / stiffness;
        let log_k0 = -I * ground * t + I * (0.5 * a * t) - 0.5 * continuous_log(coeffs, u, a, t);
        let x = d * u.conj();
        let y = d * v.conj();
        let log_norm = -d * d + log_k0 + 0.5 * x * y + x * d + 0.5 * s * (d + y) * (d + y);
        Ok(Self { log_norm, s, xi })
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &Self) -> C64 {
        self.log_overlap(other).exp()
    }

    /// Logarithm of [`GaussianKet::overlap`].
    pub fn log_overlap(&self, other: &Self) -> C64 {
        let sa = self.s.conj();
        let xa = self.xi.conj();
        let denom = C64::new(1.0, 0.0) - sa * other.s;
        let quad = xa * xa * other.s + other.xi * other.xi * sa + 2.0 * xa * other.xi;
        self.log_norm.conj() + other.log_norm - 0.5 * denom.ln() + quad / (2.0 * denom)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.overlap(self).re
    }

    /// Fock amplitudes `⟨k|self⟩` for `k < cutoff`.
    pub fn fock_amplitudes(&self, cutoff: usize) -> Vec<C64> {
        let mut out = Vec::with_capacity(cutoff);
        let mut prev = C64::new(0.0, 0.0);
        let mut cur = C64::new(1.0, 0.0);
        for k in 0..cutoff {
            out.push(cur);
            let next = (self.xi * cur + self.s * (k as f64).sqrt() * prev) / ((k + 1) as f64).sqrt();
            prev = cur;
            cur = next;
        }
        let scale = self.log_norm.exp();
        out.iter_mut().for_each(|a| *a *= scale);
        out
    }
}

/// `ln u` continued along the trajectory from `t = 0`. In the oscillatory
/// regime `u` winds around the origin once per period.
fn continuous_log(coeffs: &EffectiveCoeffs, u: C64, a: f64, t: f64) -> C64 {
    match coeffs.regime {
        Regime::Oscillatory => {
            let w = coeffs.pseudo_freq_sq().sqrt();
            let phase = w * t;
            let turns = (phase / TAU).round();
            let reduced = phase - TAU * turns;
            let arg = (a / w * reduced.sin()).atan2(reduced.cos()) + TAU * turns;
            C64::new(u.norm().ln(), arg)
        }
        // Re u = cosh κt > 0, so the principal branch is continuous.
        _ => u.ln(),
    }
}
