// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};

/// Default cap on the bytes of one dense complex matrix.
pub const DEFAULT_MEMORY_BUDGET: usize = 512 * 1024 * 1024;

/// Default per-mode cutoff for three-mode spaces.
pub const DEFAULT_TRIPARTITE_CUTOFF: usize = 6;

const BYTES_PER_ENTRY: usize = 16;

/// Truncated Fock space of one to three bosonic modes with a common cutoff.
///
/// Basis states are ordered lexicographically with the last mode fastest, so
/// the level of mode `k` in basis index `i` is `(i / cutoff^(modes-1-k)) % cutoff`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockSpace {
    cutoff: usize,
    mode_count: usize,
}

impl FockSpace {
    pub fn new(cutoff: usize, mode_count: usize) -> Result<Self> {
        Self::with_budget(cutoff, mode_count, DEFAULT_MEMORY_BUDGET)
    }

    pub fn single(cutoff: usize) -> Result<Self> {
        Self::new(cutoff, 1)
    }

    pub fn with_budget(cutoff: usize, mode_count: usize, budget: usize) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::InvalidParams(format!("cutoff must be >= 2, got {cutoff}")));
        }
        if !(1..=3).contains(&mode_count) {
            return Err(Error::InvalidParams(format!(
                "mode_count must be 1, 2 or 3, got {mode_count}"
            )));
        }
        let dim = cutoff
            .checked_pow(mode_count as u32)
            .ok_or(Error::MemoryBudgetExceeded {
                dim: usize::MAX,
                bytes: usize::MAX,
                budget,
            })?;
        let bytes = dim.saturating_mul(dim).saturating_mul(BYTES_PER_ENTRY);
        if bytes > budget {
            return Err(Error::MemoryBudgetExceeded { dim, bytes, budget });
        }
        Ok(Self { cutoff, mode_count })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn dim(&self) -> usize {
        self.cutoff.pow(self.mode_count as u32)
    }

    /// Largest single-mode cutoff whose dense matrix fits in `budget` bytes.
    pub fn max_cutoff(mode_count: usize, budget: usize) -> usize {
        let max_dim = ((budget / BYTES_PER_ENTRY) as f64).sqrt().floor() as usize;
        let mut cutoff = (max_dim as f64).powf(1.0 / mode_count as f64).floor() as usize;
        while (cutoff + 1)
            .checked_pow(mode_count as u32)
            .is_some_and(|d| d <= max_dim)
        {
            cutoff += 1;
        }
        while cutoff > 0 && cutoff.pow(mode_count as u32) > max_dim {
            cutoff -= 1;
        }
        cutoff
    }

    /// Occupation of `mode` in basis state `index`.
    pub fn level(&self, index: usize, mode: usize) -> usize {
        let stride = self.cutoff.pow((self.mode_count - 1 - mode) as u32);
        (index / stride) % self.cutoff
    }

    pub fn index(&self, levels: &[usize]) -> usize {
        debug_assert_eq!(levels.len(), self.mode_count);
        levels.iter().fold(0, |acc, &l| acc * self.cutoff + l)
    }

    /// Total occupation of basis state `index`.
    pub fn total_level(&self, index: usize) -> usize {
        (0..self.mode_count).map(|k| self.level(index, k)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_cutoff_and_bad_modes() {
        assert!(FockSpace::new(1, 1).is_err());
        assert!(FockSpace::new(4, 0).is_err());
        assert!(FockSpace::new(4, 4).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            FockSpace::with_budget(100, 2, 1 << 20),
            Err(Error::MemoryBudgetExceeded { dim: 10_000, .. })
        ));
        let max = FockSpace::max_cutoff(3, DEFAULT_MEMORY_BUDGET);
        assert!(FockSpace::new(max, 3).is_ok());
        assert!(FockSpace::new(max + 1, 3).is_err());
        assert_eq!(FockSpace::max_cutoff(1, DEFAULT_MEMORY_BUDGET), 5792);
    }

    #[test]
    fn index_round_trips() {
        let s = FockSpace::new(5, 3).unwrap();
        for i in 0..s.dim() {
            let levels: Vec<usize> = (0..3).map(|k| s.level(i, k)).collect();
            assert_eq!(s.index(&levels), i);
        }
        assert_eq!(s.level(s.index(&[1, 2, 3]), 2), 3);
    }
}
