// SPDX-License-Identifier: Apache-2.0

//! Static closed forms against truncated-space spectra.

use optomech::core_model::{
    bo_potential_exact, bo_taylor_coefficients, classify_regime, effective_coeffs, polariton_frequencies, ModeIndex,
    Regime, SystemParams,
};
use optomech::fock_oracle::{
    build_mirror_hamiltonian, build_mirror_hamiltonian_from_potential, build_tripartite_hamiltonian,
    build_two_mode_hamiltonian, numeric_potential_expansion, position_operator, FockSpace, Propagator, StateVector,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn ladder_error(p: &SystemParams, n: ModeIndex, cutoff: usize) -> f64 {
    let c = effective_coeffs(p, n).unwrap();
    let zeta = c.zeta().unwrap();
    let w = c.pseudo_freq.re;
    let potential = numeric_potential_expansion(p, n).unwrap();
    let h = build_mirror_hamiltonian_from_potential(p, &potential, &FockSpace::single(cutoff).unwrap()).unwrap();
    let e = h.eigenvalues().unwrap();
    (0..6)
        .map(|k| ((e[k] - (zeta + k as f64 * w)) / (zeta + k as f64 * w)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn ladder_matches_closed_form() {
    let p = SystemParams::scaled(10.0, 8.0, 0.8, 1.5).unwrap();
    for n in [ModeIndex::new(0, 1), ModeIndex::new(2, 0), ModeIndex::new(1, 3)] {
        assert_eq!(classify_regime(&p, n), Regime::Oscillatory);
        let err = ladder_error(&p, n, 96);
        assert!(err < 1e-8, "{n}: {err:e}");
    }
}

#[test]
fn coefficient_route_matches_potential_route() {
    let p = SystemParams::scaled(10.0, 8.0, 0.8, 1.5).unwrap();
    let n = ModeIndex::new(2, 0);
    let space = FockSpace::single(40).unwrap();
    let a = build_mirror_hamiltonian(&p, n, &space).unwrap().eigenvalues().unwrap();
    let b = build_mirror_hamiltonian_from_potential(&p, &bo_taylor_coefficients(&p, n), &space)
        .unwrap()
        .eigenvalues()
        .unwrap();
    for (x, y) in a.iter().zip(&b).take(10) {
        assert!((x - y).abs() < 1e-10 * x.abs().max(1.0));
    }
}

#[test]
fn hyperbolic_ground_energy_falls_with_cutoff() {
    let p = SystemParams::scaled(4.0, 4.0, 10.0, 1.0).unwrap();
    let n = ModeIndex::new(1, 0);
    assert_eq!(classify_regime(&p, n), Regime::Hyperbolic);
    let mut last = f64::INFINITY;
    for cutoff in [8, 16, 32, 64, 128] {
        let e0 = build_mirror_hamiltonian(&p, n, &FockSpace::single(cutoff).unwrap())
            .unwrap()
            .eigenvalues()
            .unwrap()[0];
        assert!(e0 < last, "cutoff {cutoff}");
        last = e0;
    }
}

#[test]
fn two_mode_block_matches_polaritons_on_random_draws() {
    let mut rng = StdRng::seed_from_u64(7);
    let space = FockSpace::new(2, 2).unwrap();
    for _ in 0..200 {
        let p = SystemParams::scaled(
            rng.gen_range(1.0..10.0),
            rng.gen_range(1.0..10.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(0.0..2.0),
        )
        .unwrap();
        let x = rng.gen_range(-0.5..0.5);
        let e = build_two_mode_hamiltonian(&p, x, &space)
            .unwrap()
            .excitation_block(&space, 1)
            .unwrap()
            .eigenvalues()
            .unwrap();
        let pb = polariton_frequencies(&p, x);
        assert!(((e[0] - pb.omega_a) / pb.omega_a).abs() < 1e-10);
        assert!(((e[1] - pb.omega_b) / pb.omega_b).abs() < 1e-10);
    }
}

#[test]
fn decoupled_mirror_spectrum_is_direct_sum() {
    let p = SystemParams::scaled(3.0, 2.0, 0.0, 0.6).unwrap();
    let cutoff = 4;
    let e3 = build_tripartite_hamiltonian(&p, &FockSpace::new(cutoff, 3).unwrap())
        .unwrap()
        .eigenvalues()
        .unwrap();
    let e2 = build_two_mode_hamiltonian(&p, 0.0, &FockSpace::new(cutoff, 2).unwrap())
        .unwrap()
        .eigenvalues()
        .unwrap();
    let mut expected: Vec<f64> = e2
        .iter()
        .flat_map(|&e| (0..cutoff).map(move |k| e + k as f64 * p.omega_m))
        .collect();
    expected.sort_by(f64::total_cmp);
    for (a, b) in e3.iter().zip(&expected) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn photon_sectors_displace_the_mirror_without_atoms() {
    // With G = 0 each photon number n_ph is a constant force −η n_ph on the
    // mirror: <x>(t) = −η n_ph (1 − cos Ω_M t) / (m Ω_M²).
    let p = SystemParams::scaled(3.0, 2.0, 0.1, 0.0).unwrap();
    let space = FockSpace::new(8, 3).unwrap();
    let prop = Propagator::new(&build_tripartite_hamiltonian(&p, &space).unwrap()).unwrap();
    let x = position_operator(&p, &space);
    for nph in [1usize, 2] {
        let psi0 = StateVector::basis(space.dim(), space.index(&[0, nph, 0]));
        for t in [0.7, 2.0, 3.1] {
            let psi = prop.evolve(&psi0, t).unwrap();
            let mean = x.expectation(&psi).unwrap().re;
            let expected = -p.eta * nph as f64 * (1.0 - t.cos()) / (p.mass * p.omega_m.powi(2));
            assert!(
                (mean - expected).abs() < 1e-10,
                "n_ph {nph} t {t}: {mean} vs {expected}"
            );
        }
    }
}

#[test]
fn taylor_remainder_is_cubic() {
    let p = SystemParams::scaled(7.0, 4.0, 0.5, 1.0).unwrap();
    let n = ModeIndex::new(0, 2);
    let taylor = bo_taylor_coefficients(&p, n);
    let x = 0.01 * p.detuning() / p.eta;
    let rem = |x: f64| (bo_potential_exact(&p, n, x) - taylor.eval(x)).abs();
    let ratio = rem(x) / rem(0.5 * x);
    assert!((6.0..=10.0).contains(&ratio), "{ratio}");
}
