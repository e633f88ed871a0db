use alloc::vec::Vec;

use num_complex::Complex64;

use super::{hermitian_eig, ComplexMatrix, Spectrum};
use crate::error::{Error, Result};

/// Eigenvalues closer than this are treated as one degenerate cluster.
pub const DEGENERACY_TOL: f64 = 1e-8;

const SYMMETRY_TOL: f64 = 1e-10;

/// Eigenvalue of the mirror operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

/// A spectrum whose eigenvectors are simultaneous eigenvectors of a mirror
/// operator, with the mirror eigenvalue of each.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifiedSpectrum {
    pub spectrum: Spectrum,
    pub parities: Vec<Parity>,
}

/// Labels each eigenvector with its parity under `mirror`.
///
/// Degenerate clusters (gaps below [`DEGENERACY_TOL`]) are first rotated so
/// that every vector is an eigenvector of `mirror`, by diagonalizing the
/// restriction `V_c^dagger R V_c` of the mirror to the cluster.
pub fn parity_classify(spec: &Spectrum, mirror: &ComplexMatrix) -> Result<ClassifiedSpectrum> {
    let n = spec.dim();
    if mirror.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: mirror.dim() });
    }
    let involution = mirror.matmul(mirror)?.max_abs_diff(&ComplexMatrix::identity(n))?;
    if involution > SYMMETRY_TOL {
        return Err(Error::NotInvolution { residual: involution });
    }
    let h = spec.reconstruct();
    let scale = spec.spectral_radius().max(1.0);
    let residual = h.commutator(mirror)?.max_abs();
    if residual > SYMMETRY_TOL * scale {
        return Err(Error::NotCommuting { residual });
    }

    let mut vecs = spec.eigenvectors.clone();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && spec.eigenvalues[end] - spec.eigenvalues[end - 1] < DEGENERACY_TOL {
            end += 1;
        }
        if end - start > 1 {
            resolve_cluster(&mut vecs, mirror, start, end)?;
        }
        start = end;
    }

    let mut parities = Vec::with_capacity(n);
    for k in 0..n {
        let expectation = mirror_expectation(&vecs, mirror, k);
        if expectation.abs() < 0.5 {
            return Err(Error::UnresolvedParity { index: k, expectation });
        }
        parities.push(if expectation > 0.0 { Parity::Even } else { Parity::Odd });
    }
    Ok(ClassifiedSpectrum {
        spectrum: Spectrum { eigenvalues: spec.eigenvalues.clone(), eigenvectors: vecs },
        parities,
    })
}

fn mirror_expectation(vecs: &ComplexMatrix, mirror: &ComplexMatrix, k: usize) -> f64 {
    let n = vecs.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let mut rv = Complex64::new(0.0, 0.0);
        for j in 0..n {
            rv += mirror[(i, j)] * vecs[(j, k)];
        }
        acc += vecs[(i, k)].conj() * rv;
    }
    acc.re
}

fn resolve_cluster(vecs: &mut ComplexMatrix, mirror: &ComplexMatrix, start: usize, end: usize) -> Result<()> {
    let n = vecs.dim();
    let k = end - start;
    let rv: Vec<Vec<Complex64>> = (start..end)
        .map(|c| (0..n).map(|i| (0..n).map(|j| mirror[(i, j)] * vecs[(j, c)]).sum()).collect())
        .collect();
    let restricted = ComplexMatrix::from_fn(k, |a, b| {
        (0..n).map(|i| vecs[(i, start + a)].conj() * rv[b][i]).sum()
    });
    // Round-off can leave the k x k block a hair away from Hermitian.
    let restricted = restricted.add(&restricted.adjoint())?.scale(0.5);
    let rot = hermitian_eig(&restricted)?;
    let old: Vec<Vec<Complex64>> = (start..end).map(|c| (0..n).map(|i| vecs[(i, c)]).collect()).collect();
    for c in 0..k {
        for i in 0..n {
            vecs[(i, start + c)] = (0..k).map(|a| old[a][i] * rot.eigenvectors[(a, c)]).sum();
        }
    }
    Ok(())
}
