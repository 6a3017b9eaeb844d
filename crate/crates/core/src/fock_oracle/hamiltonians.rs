// SPDX-License-Identifier: Apache-2.0

use nalgebra::{Matrix2, SymmetricEigen};

use super::sparse::SparseOp;
use super::{FockSpace, OperatorMatrix};
use crate::core_model::{effective_coeffs, EffectiveCoeffs, ModeIndex, SystemParams, TaylorCoefficients};
use crate::error::{Error, Result};

/// Extra levels carried through operator products before cropping.
pub const TRUNCATION_MARGIN: usize = 2;

/// Mode positions in two- and three-mode spaces.
pub const EXCITON_MODE: usize = 0;
pub const PHOTON_MODE: usize = 1;
pub const MIRROR_MODE: usize = 2;

/// Extended-space factory: single-mode operators embedded in `modes` modes
/// of `cutoff + TRUNCATION_MARGIN` levels.
struct Builder {
    levels: usize,
    modes: usize,
    cutoff: usize,
}

impl Builder {
    fn new(space: &FockSpace) -> Self {
        Self {
            levels: space.cutoff() + TRUNCATION_MARGIN,
            modes: space.mode_count(),
            cutoff: space.cutoff(),
        }
    }

    fn embed(&self, single: &SparseOp, mode: usize) -> SparseOp {
        let id = SparseOp::identity(self.levels);
        let mut op = if mode == 0 { single.clone() } else { id.clone() };
        for k in 1..self.modes {
            op = op.kron(if k == mode { single } else { &id });
        }
        op
    }

    fn lower(&self, mode: usize) -> SparseOp {
        self.embed(&SparseOp::annihilation(self.levels), mode)
    }

    fn number(&self, mode: usize) -> SparseOp {
        self.embed(&SparseOp::number(self.levels), mode)
    }

    fn identity(&self) -> SparseOp {
        SparseOp::identity(self.levels.pow(self.modes as u32))
    }

    fn finish(&self, op: &SparseOp) -> OperatorMatrix {
        OperatorMatrix::new(op.crop(self.levels, self.modes, self.cutoff).to_dense())
    }
}

fn require_modes(space: &FockSpace, modes: usize) -> Result<()> {
    if space.mode_count() == modes {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "expected a {modes}-mode space, got {} modes",
            space.mode_count()
        )))
    }
}

/// `(Ω_M + 2α) c†c + α (c² + c†²) + β (c + c†) + γ` from given coefficients.
pub fn build_mirror_hamiltonian_from_coeffs(coeffs: &EffectiveCoeffs, space: &FockSpace) -> Result<OperatorMatrix> {
    require_modes(space, 1)?;
    let b = Builder::new(space);
    let c = b.lower(0);
    let cd = c.adjoint();
    let h = b
        .number(0)
        .scale_re(coeffs.omega_m + 2.0 * coeffs.alpha)
        .add(&c.mul(&c).add(&cd.mul(&cd)).scale_re(coeffs.alpha))
        .add(&c.add(&cd).scale_re(coeffs.beta))
        .add(&b.identity().scale_re(coeffs.gamma));
    Ok(b.finish(&h))
}

/// Branch Hamiltonian with α, β, γ taken from the closed forms.
pub fn build_mirror_hamiltonian(params: &SystemParams, n: ModeIndex, space: &FockSpace) -> Result<OperatorMatrix> {
    build_mirror_hamiltonian_from_coeffs(&effective_coeffs(params, n)?, space)
}

/// `Ω_M c†c + V(x̂)` for a quadratic potential `V`, with
/// `x̂ = (c + c†)/sqrt(2 m Ω_M)` squared as an operator.
pub fn build_mirror_hamiltonian_from_potential(
    params: &SystemParams,
    potential: &TaylorCoefficients,
    space: &FockSpace,
) -> Result<OperatorMatrix> {
    require_modes(space, 1)?;
    let b = Builder::new(space);
    let x = position(&b, 0, params);
    let h = b
        .number(0)
        .scale_re(params.omega_m)
        .add(&b.identity().scale_re(potential.constant))
        .add(&x.scale_re(potential.linear))
        .add(&x.mul(&x).scale_re(potential.quadratic));
    Ok(b.finish(&h))
}

fn position(b: &Builder, mode: usize, params: &SystemParams) -> SparseOp {
    let c = b.lower(mode);
    c.add(&c.adjoint()).scale_re(params.zero_point_length())
}

/// Second-order expansion of branch `n`'s potential obtained numerically:
/// eigenpairs of the 2×2 exciton-photon matrix at `x = 0`, slope by
/// Hellmann-Feynman and curvature by second-order perturbation theory in `η x`.
pub fn numeric_potential_expansion(params: &SystemParams, n: ModeIndex) -> Result<TaylorCoefficients> {
    let m = Matrix2::new(params.omega_0, params.g_total, params.g_total, params.omega_c);
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 0).ok_or(Error::Eigensolver(2))?;
    let (lo, hi) = if eig.eigenvalues[0] <= eig.eigenvalues[1] {
        (0, 1)
    } else {
        (1, 0)
    };
    let (e_a, e_b) = (eig.eigenvalues[lo], eig.eigenvalues[hi]);
    // photon component of each dressed mode
    let (p_a, p_b) = (eig.eigenvectors[(1, lo)], eig.eigenvectors[(1, hi)]);
    let (n_a, n_b) = (f64::from(n.n_a), f64::from(n.n_b));
    let eta = params.eta;

    let constant = n_a * e_a + n_b * e_b;
    let linear = eta * (n_a * p_a * p_a + n_b * p_b * p_b);
    let coupling = eta * p_a * p_b;
    let quadratic = if n_a == n_b || coupling == 0.0 {
        0.0
    } else {
        let gap = e_b - e_a;
        if gap <= 0.0 {
            return Err(Error::InvalidParams(
                "degenerate polaritons: curvature undefined".into(),
            ));
        }
        coupling * coupling / gap * (n_b - n_a)
    };
    Ok(TaylorCoefficients {
        constant,
        linear,
        quadratic,
    })
}

/// Exciton (b) and photon (a) with the mirror frozen at `x`:
/// `Ω₀ b†b + (Ω_C + η x) a†a + G (b†a + b a†)`.
pub fn build_two_mode_hamiltonian(params: &SystemParams, x: f64, space: &FockSpace) -> Result<OperatorMatrix> {
    require_modes(space, 2)?;
    let b = Builder::new(space);
    let exc = b.lower(EXCITON_MODE);
    let pho = b.lower(PHOTON_MODE);
    let h = b
        .number(EXCITON_MODE)
        .scale_re(params.omega_0)
        .add(&b.number(PHOTON_MODE).scale_re(params.omega_c + params.eta * x))
        .add(&exchange(&exc, &pho).scale_re(params.g_total));
    Ok(b.finish(&h))
}

fn exchange(x: &SparseOp, y: &SparseOp) -> SparseOp {
    x.adjoint().mul(y).add(&x.mul(&y.adjoint()))
}

/// Exciton, photon and quantized mirror:
/// `Ω₀ b†b + Ω_C a†a + G (b†a + b a†) + Ω_M c†c + η a†a x̂`.
pub fn build_tripartite_hamiltonian(params: &SystemParams, space: &FockSpace) -> Result<OperatorMatrix> {
    require_modes(space, 3)?;
    let b = Builder::new(space);
    let exc = b.lower(EXCITON_MODE);
    let pho = b.lower(PHOTON_MODE);
    let photons = b.number(PHOTON_MODE);
    let h = b
        .number(EXCITON_MODE)
        .scale_re(params.omega_0)
        .add(&photons.scale_re(params.omega_c))
        .add(&exchange(&exc, &pho).scale_re(params.g_total))
        .add(&b.number(MIRROR_MODE).scale_re(params.omega_m))
        .add(&photons.mul(&position(&b, MIRROR_MODE, params)).scale_re(params.eta));
    Ok(b.finish(&h))
}

/// `c_k† c_k` for mode `k`.
pub fn number_operator(space: &FockSpace, mode: usize) -> Result<OperatorMatrix> {
    if mode >= space.mode_count() {
        return Err(Error::InvalidParams(format!("mode {mode} out of range")));
    }
    let b = Builder::new(space);
    Ok(b.finish(&b.number(mode)))
}

/// `x̂ = (c + c†)/sqrt(2 m Ω_M)` on the last mode of `space`.
pub fn position_operator(params: &SystemParams, space: &FockSpace) -> OperatorMatrix {
    let b = Builder::new(space);
    b.finish(&position(&b, space.mode_count() - 1, params))
}
