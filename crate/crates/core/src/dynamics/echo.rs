// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::SQRT_2;

use super::gaussian::GaussianKet;
use super::propagator::heisenberg_propagator_coeffs;
use crate::core_model::{effective_coeffs, EffectiveCoeffs, ModeIndex, Regime, SystemParams};
use crate::error::Result;
use crate::C64;

const I: C64 = C64::new(0.0, 1.0);

/// Mirror state on one branch, evolved from the vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorState {
    /// `d (e^{−iΩt} − 1)`, the displacement in mode quanta.
    pub amplitude: C64,
    /// `r e^{−iΩt}`; `None` in the hyperbolic regime where no static squeeze
    /// parameter exists.
    pub squeeze: Option<C64>,
    /// `d = β / (Ω_M + 4α)`.
    pub frame_displacement: f64,
    pub branch: Option<ModeIndex>,
    pub time: f64,
    /// Exact ket including the dynamical phase.
    pub ket: GaussianKet,
}

pub fn mirror_state(params: &SystemParams, n: ModeIndex, t: f64) -> Result<MirrorState> {
    mirror_state_coeffs(&effective_coeffs(params, n)?, t)
}

pub fn mirror_state_coeffs(coeffs: &EffectiveCoeffs, t: f64) -> Result<MirrorState> {
    let ket = GaussianKet::evolved_vacuum(coeffs, t)?;
    let squeeze = match coeffs.regime {
        Regime::Oscillatory => {
            let r = coeffs.bogoliubov()?.r;
            Some(C64::from_polar(r, -coeffs.pseudo_freq.re * t))
        }
        _ => None,
    };
    Ok(MirrorState {
        amplitude: coherent_amplitude_coeffs(coeffs, t)?,
        squeeze,
        frame_displacement: coeffs.displacement()?,
        branch: coeffs.branch,
        time: t,
        ket,
    })
}

/// `d (e^{−iΩt} − 1)` with the complex pseudo-frequency, so hyperbolic
/// branches grow exponentially.
pub fn coherent_amplitude(params: &SystemParams, n: ModeIndex, t: f64) -> Result<C64> {
    coherent_amplitude_coeffs(&effective_coeffs(params, n)?, t)
}

pub fn coherent_amplitude_coeffs(coeffs: &EffectiveCoeffs, t: f64) -> Result<C64> {
    let d = coeffs.displacement()?;
    Ok(d * ((-I * coeffs.pseudo_freq * t).exp() - 1.0))
}

/// `⟨φ_n(t)|φ_m(t)⟩` for the two branch states grown from a common vacuum.
pub fn branch_overlap(params: &SystemParams, n: ModeIndex, m: ModeIndex, t: f64) -> Result<C64> {
    branch_overlap_coeffs(&effective_coeffs(params, n)?, &effective_coeffs(params, m)?, t)
}

/// The phase comes from the kets; the modulus is the one returned by
/// [`loschmidt_echo`].
pub fn branch_overlap_coeffs(cn: &EffectiveCoeffs, cm: &EffectiveCoeffs, t: f64) -> Result<C64> {
    let kn = GaussianKet::evolved_vacuum(cn, t)?;
    if cn.same_generator(cm) {
        return Ok(C64::new(1.0, 0.0));
    }
    let km = GaussianKet::evolved_vacuum(cm, t)?;
    Ok(C64::from_polar(overlap_modulus(cn, cm, t)?, kn.log_overlap(&km).im))
}

/// `|⟨φ_n(t)|φ_m(t)⟩|`, exact for the quadratic branch Hamiltonians.
pub fn loschmidt_echo(params: &SystemParams, n: ModeIndex, m: ModeIndex, t: f64) -> Result<f64> {
    loschmidt_echo_coeffs(&effective_coeffs(params, n)?, &effective_coeffs(params, m)?, t)
}

pub fn loschmidt_echo_coeffs(cn: &EffectiveCoeffs, cm: &EffectiveCoeffs, t: f64) -> Result<f64> {
    if cn.same_generator(cm) {
        // Still rejects a critical branch.
        heisenberg_propagator_coeffs(cn, t)?;
        return Ok(1.0);
    }
    overlap_modulus(cn, cm, t)
}

/// Pure-state overlap from first and second moments,
/// `|⟨1|2⟩| = det(Σ₁ + Σ₂)^{−1/4} exp(−¼ δᵀ (Σ₁ + Σ₂)^{−1} δ)`, with `Σ` the
/// quadrature covariance and `δ` the difference of means. Unlike the ket
/// normalization this has no large cancelling exponents near the critical
/// point.
fn overlap_modulus(cn: &EffectiveCoeffs, cm: &EffectiveCoeffs, t: f64) -> Result<f64> {
    let (pn, pm) = (
        heisenberg_propagator_coeffs(cn, t)?,
        heisenberg_propagator_coeffs(cm, t)?,
    );
    // x(t) ∝ f c + f* c†, p(t) ∝ h c − h* c†.
    let (fn_, hn) = (pn.u + pn.v.conj(), pn.u - pn.v.conj());
    let (fm, hm) = (pm.u + pm.v.conj(), pm.u - pm.v.conj());
    let s11 = 0.5 * (fn_.norm_sqr() + fm.norm_sqr());
    let s22 = 0.5 * (hn.norm_sqr() + hm.norm_sqr());
    let s12 = -0.5 * ((fn_ * hn.conj()).im + (fm * hm.conj()).im);
    // Equals s11 s22 − s12² when both states are pure.
    let det = 0.25 * (fn_ * hm.conj() + hn * fm.conj()).norm_sqr();
    let dw = pm.w - pn.w;
    let (dx, dp) = (SQRT_2 * dw.re, SQRT_2 * dw.im);
    let q = (s22 * dx * dx + s11 * dp * dp - 2.0 * s12 * dx * dp) / det;
    Ok((det.powf(-0.25) * (-0.25 * q).exp()).min(1.0))
}

/// `exp(−½ |a_n(t) − a_m(t)|²)` with `a` from [`coherent_amplitude`]: the
/// overlap of the displacement parts alone, ignoring squeezing.
pub fn loschmidt_echo_coherent(params: &SystemParams, n: ModeIndex, m: ModeIndex, t: f64) -> Result<f64> {
    loschmidt_echo_coherent_coeffs(&effective_coeffs(params, n)?, &effective_coeffs(params, m)?, t)
}

pub fn loschmidt_echo_coherent_coeffs(cn: &EffectiveCoeffs, cm: &EffectiveCoeffs, t: f64) -> Result<f64> {
    let diff = coherent_amplitude_coeffs(cn, t)? - coherent_amplitude_coeffs(cm, t)?;
    Ok((-0.5 * diff.norm_sqr()).exp())
}

/// The echo closed form as printed, with cross-term coefficient 1. It does
/// not reduce to 1 for `n = m`.
pub fn loschmidt_echo_printed(params: &SystemParams, n: ModeIndex, m: ModeIndex, t: f64) -> Result<f64> {
    loschmidt_echo_printed_coeffs(&effective_coeffs(params, n)?, &effective_coeffs(params, m)?, t)
}

pub fn loschmidt_echo_printed_coeffs(cn: &EffectiveCoeffs, cm: &EffectiveCoeffs, t: f64) -> Result<f64> {
    let (dn, dm) = (cn.displacement()?, cm.displacement()?);
    let sin_sq = |w: C64| {
        let s = w.sin();
        s * s
    };
    let half_n = sin_sq(0.5 * cn.pseudo_freq * t);
    let half_m = sin_sq(0.5 * cm.pseudo_freq * t);
    let beat = sin_sq(0.5 * (cn.pseudo_freq - cm.pseudo_freq) * t);
    let exponent = -2.0 * dn * dn * half_n - 2.0 * dm * dm * half_m + (half_n + half_m - beat) * (dn * dm);
    Ok(exponent.re.exp())
}

/// One echo sample with its beat frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EchoEvaluation {
    pub value: f64,
    /// `½ (Ω_n − Ω_m)`.
    pub omega_diff: C64,
    pub branch_pair: (Option<ModeIndex>, Option<ModeIndex>),
    pub time: f64,
}

pub fn evaluate_echo(params: &SystemParams, n: ModeIndex, m: ModeIndex, t: f64) -> Result<EchoEvaluation> {
    evaluate_echo_coeffs(&effective_coeffs(params, n)?, &effective_coeffs(params, m)?, t)
}

pub fn evaluate_echo_coeffs(cn: &EffectiveCoeffs, cm: &EffectiveCoeffs, t: f64) -> Result<EchoEvaluation> {
    Ok(EchoEvaluation {
        value: loschmidt_echo_coeffs(cn, cm, t)?,
        omega_diff: 0.5 * (cn.pseudo_freq - cm.pseudo_freq),
        branch_pair: (cn.branch, cm.branch),
        time: t,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{PI, TAU};

    use approx::assert_relative_eq;
    use proptest::prelude::*;

    use super::*;

    fn unit() -> SystemParams {
        SystemParams::scaled(1.0, 1.0, 0.0, 0.0).unwrap()
    }

    fn coeffs(alpha: f64, beta: f64) -> EffectiveCoeffs {
        EffectiveCoeffs::from_parts(&unit(), alpha, beta, 0.0)
    }

    #[test]
    fn amplitude_examples() {
        let c = coeffs(0.05, 0.3);
        let w = c.pseudo_freq.re;
        let d = c.displacement().unwrap();
        assert_eq!(coherent_amplitude_coeffs(&c, 0.0).unwrap(), C64::new(0.0, 0.0));
        assert!(coherent_amplitude_coeffs(&c, TAU / w).unwrap().norm() < 1e-15);
        assert!((coherent_amplitude_coeffs(&c, PI / w).unwrap() - C64::new(-2.0 * d, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hyperbolic_amplitude_grows() {
        let c = coeffs(-0.5, 0.3);
        let a1 = coherent_amplitude_coeffs(&c, 1.0).unwrap().norm();
        let a2 = coherent_amplitude_coeffs(&c, 2.0).unwrap().norm();
        assert!(a2 > 2.0 * a1);
    }

    #[test]
    fn mirror_state_squeeze_has_static_modulus() {
        let c = coeffs(0.08, 0.2);
        let r = c.bogoliubov().unwrap().r;
        for t in [0.0, 1.0, 5.5] {
            let s = mirror_state_coeffs(&c, t).unwrap();
            assert_relative_eq!(s.squeeze.unwrap().norm(), r, max_relative = 1e-14);
        }
        assert_eq!(mirror_state_coeffs(&c, 0.0).unwrap().amplitude, C64::new(0.0, 0.0));
        assert!(mirror_state_coeffs(&coeffs(-0.6, 0.2), 1.0).unwrap().squeeze.is_none());
    }

    #[test]
    fn same_branch_echo_is_one() {
        let c = coeffs(0.07, 0.4);
        for t in [0.0, 0.3, 11.0] {
            assert_eq!(loschmidt_echo_coeffs(&c, &c, t).unwrap(), 1.0);
            assert_eq!(loschmidt_echo_coherent_coeffs(&c, &c, t).unwrap(), 1.0);
        }
    }

    #[test]
    fn zero_time_is_one() {
        let (a, b) = (coeffs(0.07, 0.4), coeffs(-0.03, -0.2));
        assert_eq!(branch_overlap_coeffs(&a, &b, 0.0).unwrap(), C64::new(1.0, 0.0));
        assert_eq!(loschmidt_echo_printed_coeffs(&a, &b, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn printed_echo_fails_identity() {
        let c = coeffs(0.07, 0.4);
        assert!(loschmidt_echo_printed_coeffs(&c, &c, 1.3).unwrap() < 1.0 - 1e-3);
    }

    #[test]
    fn printed_and_coherent_agree_without_cross_term() {
        let (a, b) = (coeffs(0.07, 0.4), coeffs(-0.03, 0.0));
        let t = 2.1;
        assert_relative_eq!(
            loschmidt_echo_printed_coeffs(&a, &b, t).unwrap(),
            loschmidt_echo_coherent_coeffs(&a, &b, t).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn unsqueezed_echo_is_coherent_overlap() {
        let (a, b) = (coeffs(0.0, 0.4), coeffs(0.0, -0.3));
        for t in [0.5, 2.0, 7.0] {
            assert_relative_eq!(
                loschmidt_echo_coeffs(&a, &b, t).unwrap(),
                loschmidt_echo_coherent_coeffs(&a, &b, t).unwrap(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn revival_over_common_period() {
        // Ω_n = 1, Ω_m = 2
        let (a, b) = (coeffs(0.0, 0.5), coeffs(0.75, 0.5));
        assert_relative_eq!(b.pseudo_freq.re, 2.0, max_relative = 1e-15);
        assert!(loschmidt_echo_coeffs(&a, &b, PI).unwrap() < 0.9);
        assert!((loschmidt_echo_coeffs(&a, &b, TAU).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn echo_evaluation_reports_beat() {
        let (a, b) = (coeffs(0.0, 0.5), coeffs(0.75, 0.5));
        let e = evaluate_echo_coeffs(&a, &b, 1.0).unwrap();
        assert_relative_eq!(e.omega_diff.re, -0.5, max_relative = 1e-15);
    }

    #[test]
    fn physical_branch_pair() {
        let p = SystemParams::scaled(10.0, 10.0, 0.1, 5.0).unwrap();
        let (n, m) = (ModeIndex::new(0, 1), ModeIndex::new(1, 0));
        let l = loschmidt_echo(&p, n, m, 2.0).unwrap();
        assert!(l > 0.0 && l < 1.0);
        assert_eq!(loschmidt_echo(&p, m, m, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn near_critical_pair_keeps_precision() {
        // d ≈ −530 here; the ket normalization alone loses about five digits.
        let p = SystemParams::new(10.0, 10.0, 1.31306284564146, 0.5907168470639089, 0.0, 0.0, 1).unwrap();
        let a = EffectiveCoeffs::from_parts(&p, -0.32847540399469854, 0.42542754545440564, -0.26);
        let mut b = a;
        b.beta *= 1.0 + 1e-12;
        let t = 108.40605331938546;
        let l = loschmidt_echo_coeffs(&a, &b, t).unwrap();
        assert!(l <= 1.0 && 1.0 - l < 1e-10, "{l}");
        assert!((branch_overlap_coeffs(&a, &b, t).unwrap().norm() - l).abs() < 1e-15);
    }

    #[test]
    fn moment_and_ket_routes_agree_away_from_criticality() {
        let (a, b) = (coeffs(0.07, 0.4), coeffs(-0.2, -0.3));
        for t in [0.4, 3.0, 9.0] {
            let ket = GaussianKet::evolved_vacuum(&a, t)
                .unwrap()
                .overlap(&GaussianKet::evolved_vacuum(&b, t).unwrap());
            assert_relative_eq!(
                loschmidt_echo_coeffs(&a, &b, t).unwrap(),
                ket.norm(),
                max_relative = 1e-12
            );
        }
        let (a, b) = (coeffs(-0.4, 0.4), coeffs(-0.3, -0.3));
        let t = 2.0;
        let ket = GaussianKet::evolved_vacuum(&a, t)
            .unwrap()
            .overlap(&GaussianKet::evolved_vacuum(&b, t).unwrap());
        assert_relative_eq!(
            loschmidt_echo_coeffs(&a, &b, t).unwrap(),
            ket.norm(),
            max_relative = 1e-10
        );
    }

    proptest! {
        #[test]
        fn echo_symmetric_and_bounded(
            an in -0.2f64..0.5, bn in -0.5f64..0.5, am in -0.2f64..0.5, bm in -0.5f64..0.5, t in 0.0f64..20.0,
        ) {
            let (a, b) = (coeffs(an, bn), coeffs(am, bm));
            let l1 = loschmidt_echo_coeffs(&a, &b, t).unwrap();
            let l2 = loschmidt_echo_coeffs(&b, &a, t).unwrap();
            prop_assert!((l1 - l2).abs() <= 1e-12);
            prop_assert!((0.0..=1.0).contains(&l1));
            let o = branch_overlap_coeffs(&a, &b, t).unwrap();
            prop_assert!((o.norm().min(1.0) - l1).abs() <= 1e-12);
        }
    }
}
