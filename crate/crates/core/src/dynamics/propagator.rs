// SPDX-License-Identifier: Apache-2.0

use super::gaussian::kernels;
use crate::core_model::{effective_coeffs, EffectiveCoeffs, ModeIndex, SystemParams};
use crate::error::Result;
use crate::C64;

/// Heisenberg-picture solution `c(t) = u c(0) + v c†(0) + w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergPropagator {
    pub u: C64,
    pub v: C64,
    pub w: C64,
    pub branch: Option<ModeIndex>,
    pub time: f64,
}

impl HeisenbergPropagator {
    /// `|u|² − |v|²`, which the canonical commutator fixes to 1.
    pub fn symplectic_defect(&self) -> f64 {
        self.u.norm_sqr() - self.v.norm_sqr() - 1.0
    }

    /// `⟨c(t)⟩` starting from the vacuum.
    pub fn mean_lowering(&self) -> C64 {
        self.w
    }
}

pub fn heisenberg_propagator(params: &SystemParams, n: ModeIndex, t: f64) -> Result<HeisenbergPropagator> {
    heisenberg_propagator_coeffs(&effective_coeffs(params, n)?, t)
}

/// With `A = Ω_M + 2α`, `Ω² = Ω_M (Ω_M + 4α)` and `d = β/(Ω_M + 4α)`:
/// `u = cos Ωt − i A sin(Ωt)/Ω`, `v = −2iα sin(Ωt)/Ω`,
/// `w = −d (1 − cos Ωt) − i β sin(Ωt)/Ω`.
pub fn heisenberg_propagator_coeffs(coeffs: &EffectiveCoeffs, t: f64) -> Result<HeisenbergPropagator> {
    let k = kernels(coeffs, t)?;
    let d = coeffs.beta / coeffs.stiffness();
    let a = coeffs.omega_m + 2.0 * coeffs.alpha;
    Ok(HeisenbergPropagator {
        u: C64::new(k.cos, -a * k.sinc),
        v: C64::new(0.0, -2.0 * coeffs.alpha * k.sinc),
        w: C64::new(-d * k.one_minus_cos, -coeffs.beta * k.sinc),
        branch: coeffs.branch,
        time: t,
    })
}

/// `⟨Δx²⟩(t)` from the vacuum, `|u + v*|² / (2 m Ω_M)`.
pub fn quadrature_variance(params: &SystemParams, n: ModeIndex, t: f64) -> Result<f64> {
    quadrature_variance_coeffs(&effective_coeffs(params, n)?, t)
}

pub fn quadrature_variance_coeffs(coeffs: &EffectiveCoeffs, t: f64) -> Result<f64> {
    let h = heisenberg_propagator_coeffs(coeffs, t)?;
    Ok((h.u + h.v.conj()).norm_sqr() / (2.0 * coeffs.mass * coeffs.omega_m))
}

/// The hyperbolic-regime closed form as printed,
/// `2cosh²(|Ω|t)/(mΩ_M) + 2sinh²(|Ω|t)/(m(Ω_M + 4α))`.
/// Its `t = 0` value is four times the vacuum variance; kept for comparison.
pub fn quadrature_variance_printed(params: &SystemParams, n: ModeIndex, t: f64) -> Result<f64> {
    quadrature_variance_printed_coeffs(&effective_coeffs(params, n)?, t)
}

pub fn quadrature_variance_printed_coeffs(coeffs: &EffectiveCoeffs, t: f64) -> Result<f64> {
    let w = coeffs.pseudo_freq.norm();
    let m = coeffs.mass;
    Ok(2.0 * (w * t).cosh().powi(2) / (m * coeffs.omega_m) + 2.0 * (w * t).sinh().powi(2) / (m * coeffs.stiffness()))
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    use super::*;

    fn unit() -> SystemParams {
        SystemParams::scaled(1.0, 1.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn identity_at_zero_time() {
        let c = EffectiveCoeffs::from_parts(&unit(), 0.1, 0.4, 0.0);
        let h = heisenberg_propagator_coeffs(&c, 0.0).unwrap();
        assert_eq!(
            (h.u, h.v, h.w),
            (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0))
        );
    }

    #[test]
    fn free_oscillator() {
        let c = EffectiveCoeffs::from_parts(&unit(), 0.0, 0.0, 0.0);
        let h = heisenberg_propagator_coeffs(&c, 2.2).unwrap();
        assert!((h.u - C64::from_polar(1.0, -2.2)).norm() < 1e-15);
        assert_eq!(h.v.norm() + h.w.norm(), 0.0);
    }

    #[test]
    fn drive_without_squeezing_matches_coherent_motion() {
        let c = EffectiveCoeffs::from_parts(&unit(), 0.0, 0.3, 0.0);
        let t = 0.9;
        let h = heisenberg_propagator_coeffs(&c, t).unwrap();
        let expected = 0.3 * (C64::from_polar(1.0, -t) - 1.0);
        assert!((h.w - expected).norm() < 1e-15);
    }

    #[test]
    fn vacuum_variance_at_start() {
        let p = SystemParams::new(1.0, 1.0, 3.0, 2.0, 0.0, 0.0, 1).unwrap();
        for alpha in [0.2, -0.5, -2.0] {
            let c = EffectiveCoeffs::from_parts(&p, alpha, 0.1, 0.0);
            assert_eq!(quadrature_variance_coeffs(&c, 0.0).unwrap(), 1.0 / 12.0);
            assert_relative_eq!(
                quadrature_variance_printed_coeffs(&c, 0.0).unwrap(),
                4.0 / 12.0,
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn balanced_branch_keeps_vacuum_variance() {
        let p = SystemParams::scaled(5.0, 3.0, 0.4, 1.0).unwrap();
        for t in [0.3, 1.0, 10.0] {
            assert_relative_eq!(
                quadrature_variance(&p, ModeIndex::new(2, 2), t).unwrap(),
                0.5,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn hyperbolic_closed_form() {
        let c = EffectiveCoeffs::from_parts(&unit(), -0.5, 0.0, 0.0);
        let t = 1.7;
        let v = quadrature_variance_coeffs(&c, t).unwrap();
        let expected = 0.5 * t.cosh().powi(2) + 0.5 * t.sinh().powi(2);
        assert_relative_eq!(v, expected, max_relative = 1e-14);
    }

    #[test]
    fn critical_is_rejected() {
        let c = EffectiveCoeffs::from_parts(&unit(), -0.25, 0.1, 0.0);
        assert!(heisenberg_propagator_coeffs(&c, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn symplectic(alpha in -1.0f64..1.0, beta in -1.0f64..1.0, t in 0.0f64..8.0) {
            let c = EffectiveCoeffs::from_parts(&unit(), alpha, beta, 0.0);
            prop_assume!(c.stiffness().abs() > 1e-3);
            let h = heisenberg_propagator_coeffs(&c, t).unwrap();
            let scale = h.u.norm_sqr().max(1.0);
            prop_assert!(h.symplectic_defect().abs() <= 1e-12 * scale);
        }
    }
}
