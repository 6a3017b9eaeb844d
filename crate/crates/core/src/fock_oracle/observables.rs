// SPDX-License-Identifier: Apache-2.0

use super::{position_operator, FockSpace, OperatorMatrix, StateVector};
use crate::core_model::SystemParams;
use crate::error::{Error, Result};

/// Default bound on the population of the highest retained level.
pub const DEFAULT_TAIL_TOL: f64 = 1e-8;

/// Variance of `x̂ = (c + c†)/sqrt(2 m Ω_M)` on the last mode of `space`.
pub fn variance_x(psi: &StateVector, params: &SystemParams, space: &FockSpace) -> Result<f64> {
    variance(psi, &position_operator(params, space))
}

/// `<O²> − <O>²` for Hermitian `O`.
pub fn variance(psi: &StateVector, op: &OperatorMatrix) -> Result<f64> {
    let o_psi = op.apply(psi)?;
    let mean = psi.amplitudes().dotc(o_psi.amplitudes()).re;
    Ok(o_psi.amplitudes().norm_squared() - mean * mean)
}

/// Largest population found in the top level of any mode.
pub fn tail_population(psi: &StateVector, space: &FockSpace) -> Result<f64> {
    if psi.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: psi.dim(),
        });
    }
    let top = space.cutoff() - 1;
    let mut per_mode = vec![0.0; space.mode_count()];
    for (i, a) in psi.amplitudes().iter().enumerate() {
        for (k, acc) in per_mode.iter_mut().enumerate() {
            if space.level(i, k) == top {
                *acc += a.norm_sqr();
            }
        }
    }
    Ok(per_mode.into_iter().fold(0.0, f64::max))
}

/// `CutoffTooSmall` when the top-level population exceeds `tol`.
pub fn check_tail(psi: &StateVector, space: &FockSpace, tol: f64) -> Result<()> {
    let population = tail_population(psi, space)?;
    if population > tol {
        Err(Error::CutoffTooSmall {
            cutoff: space.cutoff(),
            population,
            tolerance: tol,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn vacuum_variance() {
        let p = SystemParams::new(1.0, 1.0, 2.0, 3.0, 0.0, 0.0, 1).unwrap();
        let space = FockSpace::single(8).unwrap();
        let v = variance_x(&StateVector::vacuum(&space), &p, &space).unwrap();
        assert!((v - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn tail_detects_top_level() {
        let space = FockSpace::new(3, 2).unwrap();
        let amp = 0.5f64.sqrt();
        let mut v = vec![C64::new(0.0, 0.0); 9];
        v[0] = C64::new(amp, 0.0);
        v[space.index(&[0, 2])] = C64::new(amp, 0.0);
        let psi = StateVector::from_amplitudes(&v);
        assert!((tail_population(&psi, &space).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(
            check_tail(&psi, &space, 1e-8),
            Err(Error::CutoffTooSmall { cutoff: 3, .. })
        ));
        assert!(check_tail(&StateVector::vacuum(&space), &space, 1e-8).is_ok());
    }
}
