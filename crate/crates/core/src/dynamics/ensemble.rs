// SPDX-License-Identifier: Apache-2.0

use super::echo::branch_overlap_coeffs;
use crate::core_model::{effective_coeffs, ModeIndex, SystemParams};
use crate::error::{Error, Result};
use crate::C64;

/// Tolerance on `Σ|λ_n|² = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Polariton branches with their expansion coefficients λ_n.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchEnsemble {
    entries: Vec<(ModeIndex, C64)>,
}

impl BranchEnsemble {
    /// Requires `Σ|λ_n|² = 1` within [`NORMALIZATION_TOL`].
    pub fn new(entries: Vec<(ModeIndex, C64)>) -> Result<Self> {
        let total = Self::weight(&entries);
        if entries.is_empty() || (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidParams(format!(
                "branch weights sum to {total}, expected 1"
            )));
        }
        Ok(Self { entries })
    }

    /// Rescales the weights to unit norm.
    pub fn normalized(entries: Vec<(ModeIndex, C64)>) -> Result<Self> {
        let total = Self::weight(&entries);
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::InvalidParams("branch weights must not all vanish".into()));
        }
        let scale = total.sqrt().recip();
        Ok(Self {
            entries: entries.into_iter().map(|(n, w)| (n, w * scale)).collect(),
        })
    }

    pub fn single(n: ModeIndex) -> Self {
        Self {
            entries: vec![(n, C64::new(1.0, 0.0))],
        }
    }

    fn weight(entries: &[(ModeIndex, C64)]) -> f64 {
        entries.iter().map(|(_, w)| w.norm_sqr()).sum()
    }

    pub fn entries(&self) -> &[(ModeIndex, C64)] {
        &self.entries
    }
}

/// `Tr ρ²` of the reduced mirror state, `Σ_{n,m} |λ_n|²|λ_m|² |⟨φ_n|φ_m⟩|²`.
pub fn branch_purity(params: &SystemParams, ensemble: &BranchEnsemble, t: f64) -> Result<f64> {
    let coeffs = ensemble
        .entries
        .iter()
        .map(|(n, _)| effective_coeffs(params, *n))
        .collect::<Result<Vec<_>>>()?;
    let probs: Vec<f64> = ensemble.entries.iter().map(|(_, w)| w.norm_sqr()).collect();
    let mut purity = 0.0;
    for i in 0..coeffs.len() {
        purity += probs[i] * probs[i];
        for j in (i + 1)..coeffs.len() {
            let o = branch_overlap_coeffs(&coeffs[i], &coeffs[j], t)?.norm_sqr().min(1.0);
            purity += 2.0 * probs[i] * probs[j] * o;
        }
    }
    Ok(purity.min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::loschmidt_echo;

    fn params() -> SystemParams {
        SystemParams::scaled(10.0, 10.0, 0.6, 5.0).unwrap()
    }

    #[test]
    fn normalization_is_checked() {
        let n = ModeIndex::new(0, 1);
        assert!(BranchEnsemble::new(vec![(n, C64::new(0.5, 0.0))]).is_err());
        let e =
            BranchEnsemble::normalized(vec![(n, C64::new(1.0, 0.0)), (ModeIndex::VACUUM, C64::new(0.0, 1.0))]).unwrap();
        assert!((BranchEnsemble::weight(e.entries()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn single_branch_is_pure() {
        let e = BranchEnsemble::single(ModeIndex::new(2, 1));
        assert_eq!(branch_purity(&params(), &e, 3.0).unwrap(), 1.0);
    }

    #[test]
    fn two_branch_purity_from_echo() {
        let (n, m) = (ModeIndex::new(0, 1), ModeIndex::VACUUM);
        let h = C64::new(0.5f64.sqrt(), 0.0);
        let e = BranchEnsemble::new(vec![(n, h), (m, h)]).unwrap();
        assert!((branch_purity(&params(), &e, 0.0).unwrap() - 1.0).abs() < 1e-15);
        let t = 2.0;
        let l = loschmidt_echo(&params(), n, m, t).unwrap();
        let p = branch_purity(&params(), &e, t).unwrap();
        assert!((p - 0.5 * (1.0 + l * l)).abs() < 1e-14);
        assert!(p < 1.0);
    }
}
