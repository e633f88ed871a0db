//! Dense complex linear algebra.
//!
//! All Hamiltonians here are at most a few hundred states, so everything is
//! dense. Time evolution always goes through a stored eigendecomposition:
//! one diagonalization serves every time sample.

mod eigen;
mod matrix;
mod parity;

use alloc::vec::Vec;

use num_complex::Complex64;

pub use eigen::{hermitian_eig, HERMITIAN_TOL};
pub use matrix::{ComplexMatrix, StateVector};
pub use parity::{parity_classify, ClassifiedSpectrum, Parity, DEGENERACY_TOL};

use crate::error::{Error, Result};
use crate::math::phase_factor;

/// Eigenvalues in ascending order with orthonormal eigenvectors as the
/// columns of `eigenvectors`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> StateVector {
        let n = self.dim();
        StateVector::new((0..n).map(|i| self.eigenvectors[(i, k)]).collect())
    }

    /// `<v_k|psi>` for every eigenvector.
    pub fn project(&self, psi: &StateVector) -> Result<Vec<Complex64>> {
        let n = self.dim();
        if psi.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: psi.dim() });
        }
        let v = &self.eigenvectors;
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); n];
        for (i, a) in psi.amplitudes().iter().enumerate() {
            for (k, o) in out.iter_mut().enumerate() {
                *o += v[(i, k)].conj() * a;
            }
        }
        Ok(out)
    }

    /// `V diag(eps) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut h = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, e) in self.eigenvalues.iter().enumerate() {
                    acc += v[(i, k)] * v[(j, k)].conj() * e;
                }
                h[(i, j)] = acc;
            }
        }
        h
    }

    /// `max |eps_k|`.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|e| e.abs()).fold(0.0, f64::max)
    }

    pub fn evolve(&self, psi0: &StateVector, t: f64) -> Result<StateVector> {
        evolve(self, psi0, t)
    }
}

/// `e^{-iHt} psi0 = sum_k e^{-i eps_k t} v_k <v_k|psi0>`.
pub fn evolve(spec: &Spectrum, psi0: &StateVector, t: f64) -> Result<StateVector> {
    let coeffs = spec.project(psi0)?;
    let n = spec.dim();
    let v = &spec.eigenvectors;
    let phased: Vec<Complex64> = coeffs
        .iter()
        .zip(&spec.eigenvalues)
        .map(|(c, e)| c * phase_factor(e * t))
        .collect();
    let amps = (0..n)
        .map(|i| phased.iter().enumerate().map(|(k, c)| v[(i, k)] * c).sum())
        .collect();
    Ok(StateVector::new(amps))
}
