// SPDX-License-Identifier: Apache-2.0

//! Row-compressed operator used to assemble Hamiltonians before densifying.

use nalgebra::DMatrix;

use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct SparseOp {
    dim: usize,
    rows: Vec<Vec<(usize, C64)>>,
}

impl SparseOp {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zeros(dim);
        for (i, row) in op.rows.iter_mut().enumerate() {
            row.push((i, C64::new(1.0, 0.0)));
        }
        op
    }

    /// Annihilation operator on `levels` levels: `<k|c|k+1> = sqrt(k+1)`.
    pub fn annihilation(levels: usize) -> Self {
        let mut op = Self::zeros(levels);
        for k in 0..levels.saturating_sub(1) {
            op.rows[k].push((k + 1, C64::new(((k + 1) as f64).sqrt(), 0.0)));
        }
        op
    }

    /// `diag(0, 1, …, levels − 1)`, exact rather than via `c†c`.
    pub fn number(levels: usize) -> Self {
        let mut op = Self::zeros(levels);
        for k in 1..levels {
            op.rows[k].push((k, C64::new(k as f64, 0.0)));
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn push(&mut self, row: usize, col: usize, value: C64) {
        if value == C64::new(0.0, 0.0) {
            return;
        }
        let entries = &mut self.rows[row];
        match entries.iter_mut().find(|(c, _)| *c == col) {
            Some((_, v)) => *v += value,
            None => entries.push((col, value)),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        let mut out = self.clone();
        for row in &mut out.rows {
            for (_, v) in row.iter_mut() {
                *v *= factor;
            }
        }
        out
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (i, row) in other.rows.iter().enumerate() {
            for &(j, v) in row {
                out.push(i, j, v);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zeros(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for &(k, a) in row {
                for &(j, b) in &other.rows[k] {
                    out.push(i, j, a * b);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                out.push(j, i, v.conj());
            }
        }
        out
    }

    /// Tensor product, `self` acting on the slower index.
    pub fn kron(&self, other: &Self) -> Self {
        let dim = self.dim * other.dim;
        let mut out = Self::zeros(dim);
        for (i1, row1) in self.rows.iter().enumerate() {
            for &(j1, a) in row1 {
                for (i2, row2) in other.rows.iter().enumerate() {
                    for &(j2, b) in row2 {
                        out.push(i1 * other.dim + i2, j1 * other.dim + j2, a * b);
                    }
                }
            }
        }
        out
    }

    /// Restrict to the basis states whose every mode level is below `cutoff`,
    /// where `self` lives on `modes` modes of `levels` levels each.
    pub fn crop(&self, levels: usize, modes: usize, cutoff: usize) -> Self {
        assert_eq!(levels.pow(modes as u32), self.dim);
        let keep = |mut i: usize| {
            let mut new = 0;
            let mut stride = 1;
            for _ in 0..modes {
                let level = i % levels;
                if level >= cutoff {
                    return None;
                }
                new += level * stride;
                stride *= cutoff;
                i /= levels;
            }
            Some(new)
        };
        let mut out = Self::zeros(cutoff.pow(modes as u32));
        for (i, row) in self.rows.iter().enumerate() {
            let Some(ni) = keep(i) else { continue };
            for &(j, v) in row {
                if let Some(nj) = keep(j) {
                    out.push(ni, nj, v);
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                m[(i, j)] += v;
            }
        }
        m
    }
}
