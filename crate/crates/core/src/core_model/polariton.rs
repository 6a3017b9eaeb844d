// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::SystemParams;

/// Dressed exciton-photon modes at a frozen mirror displacement.
///
/// `A = a cos(θ/2) − b sin(θ/2)` and `B = a sin(θ/2) + b cos(θ/2)`, with `a`
/// the cavity photon and `b` the collective exciton.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolaritonBasis {
    pub theta: f64,
    /// Lower dressed frequency (mode A).
    pub omega_a: f64,
    /// Upper dressed frequency (mode B).
    pub omega_b: f64,
    pub x_eval: f64,
}

impl PolaritonBasis {
    /// (photon, exciton) amplitudes of a single A quantum.
    pub fn lower_mode_amplitudes(&self) -> (f64, f64) {
        let (s, c) = (0.5 * self.theta).sin_cos();
        (c, -s)
    }

    /// (photon, exciton) amplitudes of a single B quantum.
    pub fn upper_mode_amplitudes(&self) -> (f64, f64) {
        let (s, c) = (0.5 * self.theta).sin_cos();
        (s, c)
    }
}

/// θ = atan2(2G, Ω₀ − Ω_C − ηx), continuous through resonance.
pub fn mixing_angle(params: &SystemParams, x: f64) -> f64 {
    let detuning = params.omega_0 - params.omega_c - params.eta * x;
    (2.0 * params.g_total).atan2(detuning)
}

/// Eigenfrequencies of the exciton-photon block at mirror displacement `x`.
pub fn polariton_frequencies(params: &SystemParams, x: f64) -> PolaritonBasis {
    let cavity = params.omega_c + params.eta * x;
    let g = params.g_total;
    let trace = params.omega_0 + cavity;
    let gap = (params.omega_0 - cavity).hypot(2.0 * g);
    let det = params.omega_0 * cavity - g * g;

    // Take the root without cancellation and recover the other from the
    // determinant.
    let (omega_a, omega_b) = if trace >= 0.0 {
        let upper = 0.5 * (trace + gap);
        let lower = if upper != 0.0 { det / upper } else { 0.5 * (trace - gap) };
        (lower, upper)
    } else {
        let lower = 0.5 * (trace - gap);
        (lower, det / lower)
    };

    PolaritonBasis {
        theta: mixing_angle(params, x),
        omega_a,
        omega_b,
        x_eval: x,
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    use approx::assert_relative_eq;
    use proptest::prelude::*;

    use super::*;

    fn params(omega_0: f64, omega_c: f64, eta: f64, g: f64) -> SystemParams {
        SystemParams::scaled(omega_0, omega_c, eta, g).unwrap()
    }

    #[test]
    fn angle_at_resonance_is_quarter_turn() {
        assert_relative_eq!(mixing_angle(&params(3.0, 3.0, 0.1, 0.7), 0.0), FRAC_PI_2);
    }

    #[test]
    fn angle_without_atoms() {
        assert_eq!(mixing_angle(&params(2.0, 1.0, 0.1, 0.0), 0.0), 0.0);
    }

    #[test]
    fn angle_at_detuning_equal_to_twice_coupling() {
        // Ω₀ − Ω_C − ηx = 2G
        let p = params(10.0, 7.0, 2.0, 0.5);
        assert_relative_eq!(mixing_angle(&p, 1.0), FRAC_PI_4, epsilon = 1e-15);
    }

    #[test]
    fn decoupled_limit() {
        let b = polariton_frequencies(&params(5.0, 3.0, 0.2, 0.0), 0.0);
        assert_eq!((b.omega_a, b.omega_b), (3.0, 5.0));
    }

    #[test]
    fn resonant_splitting() {
        let b = polariton_frequencies(&params(4.0, 4.0, 0.2, 0.5), 0.0);
        assert_relative_eq!(b.omega_a, 3.5, epsilon = 1e-15);
        assert_relative_eq!(b.omega_b, 4.5, epsilon = 1e-15);
    }

    #[test]
    fn detuned_example() {
        let b = polariton_frequencies(&params(10.0, 8.0, 0.0, 3.0), 0.0);
        assert_relative_eq!(b.omega_a, 9.0 - 10f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(b.omega_b, 9.0 + 10f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn mode_vectors_diagonalize_the_block() {
        let p = params(6.0, 4.5, 0.3, 0.8);
        let x = 0.4;
        let b = polariton_frequencies(&p, x);
        let cavity = p.omega_c + p.eta * x;
        // Single-excitation block in the (photon, exciton) basis.
        let apply = |(ph, ex): (f64, f64)| (cavity * ph + p.g_total * ex, p.g_total * ph + p.omega_0 * ex);
        for (vec, freq) in [
            (b.lower_mode_amplitudes(), b.omega_a),
            (b.upper_mode_amplitudes(), b.omega_b),
        ] {
            let out = apply(vec);
            assert_relative_eq!(out.0, freq * vec.0, epsilon = 1e-13);
            assert_relative_eq!(out.1, freq * vec.1, epsilon = 1e-13);
        }
    }

    proptest! {
        #[test]
        fn trace_and_gap_identities(
            omega_0 in 0.1f64..50.0,
            omega_c in 0.1f64..50.0,
            eta in -2.0f64..2.0,
            g in 0.0f64..10.0,
            x in -1.0f64..1.0,
        ) {
            let p = params(omega_0, omega_c, eta, g);
            let b = polariton_frequencies(&p, x);
            let trace = omega_0 + omega_c + eta * x;
            let scale = b.omega_a.abs().max(b.omega_b.abs()).max(trace.abs());
            prop_assert!(b.omega_b >= b.omega_a);
            prop_assert!((b.omega_a + b.omega_b - trace).abs() <= 1e-10 * scale);
            let gap_sq = (omega_0 - omega_c - eta * x).powi(2) + 4.0 * g * g;
            let diff = b.omega_b - b.omega_a;
            prop_assert!((diff * diff - gap_sq).abs() <= 1e-10 * scale * scale);
            prop_assert!((0.0..=std::f64::consts::PI).contains(&b.theta));
        }
    }
}
