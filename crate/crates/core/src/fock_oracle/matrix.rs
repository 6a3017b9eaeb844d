// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::FockSpace;
use crate::error::{Error, Result};
use crate::C64;

/// Tolerance on `max |M - M†|` for a matrix flagged Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense complex operator on a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<C64>,
    hermitian: bool,
}

impl OperatorMatrix {
    /// Wrap `entries`, setting the Hermitian flag from the max-norm check.
    pub fn new(entries: DMatrix<C64>) -> Self {
        assert_eq!(entries.nrows(), entries.ncols(), "operator must be square");
        let hermitian = hermiticity_defect(&entries) < HERMITIAN_TOL;
        Self { entries, hermitian }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// `max |M - M†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.entries)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self::new(
            &self.entries * &other.entries - &other.entries * &self.entries,
        ))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        check_dim(self.dim(), psi.dim())?;
        Ok(StateVector::from_vector(&self.entries * psi.amplitudes()))
    }

    /// `<psi|M|psi>`.
    pub fn expectation(&self, psi: &StateVector) -> Result<C64> {
        let m_psi = self.apply(psi)?;
        Ok(psi.amplitudes().dotc(m_psi.amplitudes()))
    }

    /// Ascending eigenvalues of a Hermitian operator.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(Propagator::new(self)?.energies().to_vec())
    }

    /// Sub-matrix on the basis states of total occupation `k`.
    pub fn excitation_block(&self, space: &FockSpace, k: usize) -> Result<Self> {
        check_dim(space.dim(), self.dim())?;
        let idx: Vec<usize> = (0..space.dim()).filter(|&i| space.total_level(i) == k).collect();
        let block = DMatrix::from_fn(idx.len(), idx.len(), |r, c| self.entries[(idx[r], idx[c])]);
        Ok(Self::new(block))
    }
}

fn hermiticity_defect(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Amplitude vector on a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<C64>,
}

impl StateVector {
    pub fn from_vector(amplitudes: DVector<C64>) -> Self {
        Self { amplitudes }
    }

    pub fn from_amplitudes(amplitudes: &[C64]) -> Self {
        Self::from_vector(DVector::from_column_slice(amplitudes))
    }

    /// The basis state `index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[index] = C64::new(1.0, 0.0);
        Self::from_vector(v)
    }

    /// All modes in their ground level.
    pub fn vacuum(space: &FockSpace) -> Self {
        Self::basis(space.dim(), 0)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Self {
        Self::from_vector(self.amplitudes.unscale(self.norm()))
    }

    /// Tensor product, `self` on the slower index.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_vector(self.amplitudes.kronecker(&other.amplitudes))
    }
}

/// `<psi|phi>`.
pub fn overlap(psi: &StateVector, phi: &StateVector) -> Result<C64> {
    check_dim(psi.dim(), phi.dim())?;
    Ok(psi.amplitudes().dotc(phi.amplitudes()))
}

/// Cached eigendecomposition of a Hermitian operator for exact evolution.
///
/// Real symmetric input takes the real solver; complex Hermitian input the
/// complex one.
#[derive(Debug, Clone)]
pub struct Propagator {
    energies: Vec<f64>,
    vectors: DMatrix<C64>,
}

impl Propagator {
    pub fn new(h: &OperatorMatrix) -> Result<Self> {
        if !h.is_hermitian() {
            return Err(Error::InvalidParams(format!(
                "operator is not Hermitian (defect {:e})",
                h.hermiticity_defect()
            )));
        }
        let dim = h.dim();
        let (energies, vectors) = if h.entries.iter().all(|z| z.im == 0.0) {
            let real = h.entries.map(|z| z.re);
            let eig = SymmetricEigen::try_new(real, f64::EPSILON, 0).ok_or(Error::Eigensolver(dim))?;
            (
                eig.eigenvalues.as_slice().to_vec(),
                eig.eigenvectors.map(|x| C64::new(x, 0.0)),
            )
        } else {
            let eig = SymmetricEigen::try_new(h.entries.clone(), f64::EPSILON, 0).ok_or(Error::Eigensolver(dim))?;
            (eig.eigenvalues.as_slice().to_vec(), eig.eigenvectors)
        };
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| energies[a].total_cmp(&energies[b]));
        let sorted_energies = order.iter().map(|&i| energies[i]).collect();
        let sorted_vectors = DMatrix::from_fn(dim, dim, |r, c| vectors[(r, order[c])]);
        Ok(Self {
            energies: sorted_energies,
            vectors: sorted_vectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// Ascending eigenvalues.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Normalized eigenvector `k` (ascending energy order).
    pub fn eigenvector(&self, k: usize) -> StateVector {
        StateVector::from_vector(self.vectors.column(k).into_owned())
    }

    pub fn ground_state(&self) -> StateVector {
        self.eigenvector(0)
    }

    /// `exp(-i H t) psi`.
    pub fn evolve(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        check_dim(self.dim(), psi.dim())?;
        let mut coeffs = self.vectors.ad_mul(psi.amplitudes());
        for (c, &e) in coeffs.iter_mut().zip(&self.energies) {
            *c *= C64::from_polar(1.0, -e * t);
        }
        Ok(StateVector::from_vector(&self.vectors * coeffs))
    }
}

/// One-shot `exp(-i H t) psi0`; build a [`Propagator`] to reuse the
/// decomposition over a time grid.
pub fn evolve(h: &OperatorMatrix, psi0: &StateVector, t: f64) -> Result<StateVector> {
    check_dim(h.dim(), psi0.dim())?;
    Propagator::new(h)?.evolve(psi0, t)
}
