// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{bo_taylor_coefficients, ModeIndex, SystemParams};
use crate::error::{Error, Result};
use crate::C64;

/// Relative tolerance on `|Ω_M + 4α| / Ω_M` below which a branch is critical.
pub const DEFAULT_TOL_CRIT: f64 = 1e-12;

/// Character of the mirror motion on one branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `Ω_M + 4α > 0`: real pseudo-frequency, periodic motion.
    Oscillatory,
    /// `Ω_M + 4α < 0`: imaginary pseudo-frequency, exponential runaway.
    Hyperbolic,
    /// `Ω_M + 4α = 0` within tolerance.
    Critical,
}

impl Regime {
    pub fn classify(omega_m: f64, stiffness: f64, tol_crit: f64) -> Self {
        if stiffness.abs() <= tol_crit * omega_m {
            Regime::Critical
        } else if stiffness > 0.0 {
            Regime::Oscillatory
        } else {
            Regime::Hyperbolic
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Oscillatory => "oscillatory",
            Regime::Hyperbolic => "hyperbolic",
            Regime::Critical => "critical",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which constant term to use for the branch Hamiltonian.
///
/// Substituting `x = (c + c†)/sqrt(2mΩ_M)` into the quadratic potential
/// `K x²` leaves the constant `K/(2mΩ_M) = α`, which is what
/// [`GammaForm::NormalOrdered`] adds to the expansion constant. The two
/// printed forms carry `K/(mΩ_M)` with the splitting raised to the 3/2 or
/// 2/3 power, and are kept for comparison only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaForm {
    #[default]
    NormalOrdered,
    PrintedThreeHalves,
    PrintedTwoThirds,
}

/// Coefficients of the branch Hamiltonian
/// `H = (Ω_M + 2α) c†c + α (c² + c†²) + β (c + c†) + γ`
/// together with the derived pseudo-frequency and regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCoeffs {
    pub branch: Option<ModeIndex>,
    pub omega_m: f64,
    pub mass: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// `sqrt(Ω_M (Ω_M + 4α))`, principal branch (positive imaginary part in
    /// the hyperbolic regime).
    pub pseudo_freq: C64,
    pub regime: Regime,
}

impl EffectiveCoeffs {
    /// Build from directly supplied α, β, γ; Ω_M and the mass come from
    /// `params`.
    pub fn from_parts(params: &SystemParams, alpha: f64, beta: f64, gamma: f64) -> Self {
        Self::with_tolerance(params, alpha, beta, gamma, DEFAULT_TOL_CRIT)
    }

    pub fn with_tolerance(params: &SystemParams, alpha: f64, beta: f64, gamma: f64, tol_crit: f64) -> Self {
        let omega_m = params.omega_m;
        let stiffness = omega_m + 4.0 * alpha;
        Self {
            branch: None,
            omega_m,
            mass: params.mass,
            alpha,
            beta,
            gamma,
            pseudo_freq: C64::new(omega_m * stiffness, 0.0).sqrt(),
            regime: Regime::classify(omega_m, stiffness, tol_crit),
        }
    }

    pub fn labelled(mut self, n: ModeIndex) -> Self {
        self.branch = Some(n);
        self
    }

    /// Ω_M + 4α, the effective spring constant in units of Ω_M.
    pub fn stiffness(&self) -> f64 {
        self.omega_m + 4.0 * self.alpha
    }

    /// Ω_M (Ω_M + 4α), the square of the pseudo-frequency.
    pub fn pseudo_freq_sq(&self) -> f64 {
        self.omega_m * self.stiffness()
    }

    fn require_noncritical(&self) -> Result<f64> {
        match self.regime {
            Regime::Critical => Err(Error::DegenerateFrequency {
                stiffness: self.stiffness(),
            }),
            _ => Ok(self.stiffness()),
        }
    }

    fn require_oscillatory(&self) -> Result<f64> {
        let stiffness = self.require_noncritical()?;
        if self.regime == Regime::Hyperbolic {
            return Err(Error::HyperbolicRegime { stiffness });
        }
        Ok(stiffness)
    }

    /// Displacement `d = β / (Ω_M + 4α)` of the frame in which the linear
    /// term vanishes.
    pub fn displacement(&self) -> Result<f64> {
        Ok(self.beta / self.require_noncritical()?)
    }

    /// Ground energy ζ of the branch Hamiltonian, so that its spectrum is
    /// `ζ + k Ω_{M,n}`. Defined in the oscillatory regime only.
    pub fn zeta(&self) -> Result<f64> {
        let stiffness = self.require_oscillatory()?;
        let root_gap = self.omega_m.sqrt() - stiffness.sqrt();
        Ok(-0.25 * root_gap * root_gap - self.beta * self.beta / stiffness + self.gamma)
    }

    pub fn bogoliubov(&self) -> Result<BogoliubovCoeffs> {
        let stiffness = self.require_oscillatory()?;
        // μ = cosh λ, ν = sinh λ with λ = ¼ ln(Ω_M / (Ω_M + 4α)).
        let lambda = 0.25 * (self.omega_m / stiffness).ln();
        Ok(BogoliubovCoeffs {
            mu: lambda.cosh(),
            nu: lambda.sinh(),
            r: lambda.abs(),
        })
    }

    /// True when both branches have the same generator.
    pub fn same_generator(&self, other: &Self) -> bool {
        self.omega_m == other.omega_m
            && self.mass == other.mass
            && self.alpha == other.alpha
            && self.beta == other.beta
            && self.gamma == other.gamma
    }
}

/// `C = μ c − ν c†` with `μ² − ν² = 1` and `r = arccosh μ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BogoliubovCoeffs {
    pub mu: f64,
    pub nu: f64,
    pub r: f64,
}

fn quadratic_alpha(params: &SystemParams, n: ModeIndex) -> f64 {
    // α = K / (2 m Ω_M) with K the x² coefficient of the expanded potential.
    bo_taylor_coefficients(params, n).quadratic / (2.0 * params.mass * params.omega_m)
}

/// Constant term γ of the branch Hamiltonian in the requested form.
pub fn gamma(params: &SystemParams, n: ModeIndex, form: GammaForm) -> f64 {
    let taylor = bo_taylor_coefficients(params, n);
    let m_omega = params.mass * params.omega_m;
    let g2eta2 = params.g_total.powi(2) * params.eta.powi(2) * n.imbalance();
    let gap_sq = params.splitting().powi(2);
    let last = match form {
        GammaForm::NormalOrdered => taylor.quadratic / (2.0 * m_omega),
        GammaForm::PrintedThreeHalves if g2eta2 == 0.0 => 0.0,
        GammaForm::PrintedThreeHalves => g2eta2 / (m_omega * gap_sq.powf(1.5)),
        GammaForm::PrintedTwoThirds if g2eta2 == 0.0 => 0.0,
        GammaForm::PrintedTwoThirds => g2eta2 / (m_omega * gap_sq.powf(2.0 / 3.0)),
    };
    taylor.constant + last
}

/// α, β, γ and derived quantities for branch `n`.
pub fn effective_coeffs(params: &SystemParams, n: ModeIndex) -> Result<EffectiveCoeffs> {
    effective_coeffs_with(params, n, GammaForm::NormalOrdered, DEFAULT_TOL_CRIT)
}

pub fn effective_coeffs_with(
    params: &SystemParams,
    n: ModeIndex,
    form: GammaForm,
    tol_crit: f64,
) -> Result<EffectiveCoeffs> {
    if params.splitting() == 0.0 && n.imbalance() != 0.0 && params.eta != 0.0 {
        return Err(Error::InvalidParams(
            "branch potential is not analytic at x = 0 for G = 0 at exact resonance".into(),
        ));
    }
    let taylor = bo_taylor_coefficients(params, n);
    let alpha = quadratic_alpha(params, n);
    let beta = taylor.linear * params.zero_point_length();
    let gamma = gamma(params, n, form);
    Ok(EffectiveCoeffs::with_tolerance(params, alpha, beta, gamma, tol_crit).labelled(n))
}

/// Regime of branch `n` from the sign of Ω_M + 4α_n.
pub fn classify_regime(params: &SystemParams, n: ModeIndex) -> Regime {
    let alpha = quadratic_alpha(params, n);
    Regime::classify(params.omega_m, params.omega_m + 4.0 * alpha, DEFAULT_TOL_CRIT)
}

/// Polariton imbalance `n_A − n_B` above which a branch turns hyperbolic:
/// `m Ω_M² ((Ω₀ − Ω_C)² + 4G²)^{3/2} / (2 G² η²)`. Infinite without atoms or
/// without radiation pressure.
pub fn critical_threshold(params: &SystemParams) -> f64 {
    let denom = 2.0 * params.g_total.powi(2) * params.eta.powi(2);
    if denom == 0.0 {
        return f64::INFINITY;
    }
    params.mass * params.omega_m.powi(2) * params.splitting().powi(3) / denom
}

/// The imaginary-frequency condition as printed, `α_n < −Ω_C/4`.
pub fn printed_imaginary_condition(params: &SystemParams, alpha: f64) -> bool {
    alpha < -0.25 * params.omega_c
}

/// Bogoliubov coefficients of branch `n`.
pub fn bogoliubov(params: &SystemParams, n: ModeIndex) -> Result<BogoliubovCoeffs> {
    effective_coeffs(params, n)?.bogoliubov()
}
