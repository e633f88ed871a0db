//! Hermitian eigensolver: Householder reduction to a real symmetric
//! tridiagonal matrix followed by shifted implicit QL iterations.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{ComplexMatrix, Spectrum};
use crate::error::{Error, Result};
use crate::math::{hypot, sqrt};

/// Inputs with `max |H[i][j] - conj(H[j][i])|` at or above this are rejected.
pub const HERMITIAN_TOL: f64 = 1e-12;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Diagonalizes a Hermitian matrix.
///
/// Eigenvalues come back in ascending order; eigenvectors are the columns of
/// the returned unitary. The result depends only on the input entries, not on
/// any global state, so repeated calls are bitwise identical.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<Spectrum> {
    let (deviation, row, col) = h.hermiticity_deviation();
    if !(deviation < HERMITIAN_TOL) {
        return Err(Error::NotHermitian { deviation, row, col });
    }
    let n = h.dim();
    if n == 0 {
        return Ok(Spectrum { eigenvalues: Vec::new(), eigenvectors: ComplexMatrix::zeros(0) });
    }

    let mut a = ComplexMatrix::from_fn(n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut q = ComplexMatrix::identity(n);
    tridiagonalize(&mut a, &mut q);

    let mut diag: Vec<f64> = (0..n).map(|k| a[(k, k)].re).collect();
    let mut offdiag = vec![0.0; n];
    // T = D S D^dagger with S real: phase[k+1] = phase[k] * e_k / |e_k|.
    let mut phase = vec![Complex64::new(1.0, 0.0); n];
    for k in 0..n - 1 {
        let e = a[(k + 1, k)];
        let r = e.norm();
        offdiag[k] = r;
        phase[k + 1] = if r > 0.0 { phase[k] * (e / r) } else { phase[k] };
    }

    // zt[c * n + k] = Z[k][c]; rows of zt are eigenvectors of S.
    let mut zt = vec![0.0; n * n];
    for i in 0..n {
        zt[i * n + i] = 1.0;
    }
    tql2(&mut diag, &mut offdiag, &mut zt, n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));

    let qd = ComplexMatrix::from_fn(n, |r, k| q[(r, k)] * phase[k]);
    let mut vecs = ComplexMatrix::zeros(n);
    for (c, &src) in order.iter().enumerate() {
        let z = &zt[src * n..(src + 1) * n];
        for r in 0..n {
            let row = qd.row(r);
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, &zk) in row.iter().zip(z) {
                acc += x * zk;
            }
            vecs[(r, c)] = acc;
        }
    }
    Ok(Spectrum { eigenvalues: order.iter().map(|&k| diag[k]).collect(), eigenvectors: vecs })
}

/// In-place `A <- Q^dagger A Q` with `A` ending tridiagonal; `q` accumulates
/// the product of reflectors.
fn tridiagonalize(a: &mut ComplexMatrix, q: &mut ComplexMatrix) {
    let n = a.dim();
    let zero = Complex64::new(0.0, 0.0);
    let mut v = Vec::with_capacity(n);
    let mut p = Vec::with_capacity(n);
    for k in 0..n.saturating_sub(2) {
        let tail: f64 = (k + 2..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let x0_abs = x0.norm();
        let xnorm = sqrt(x0_abs * x0_abs + tail);
        let unit = if x0_abs > 0.0 { x0 / x0_abs } else { Complex64::new(1.0, 0.0) };
        let alpha = -unit * xnorm;

        v.clear();
        v.extend((k + 1..n).map(|i| a[(i, k)]));
        v[0] -= alpha;
        let vnorm = sqrt(v.iter().map(|z| z.norm_sqr()).sum());
        for z in v.iter_mut() {
            *z /= vnorm;
        }

        // Trailing block B <- (I - 2vv^dagger) B (I - 2vv^dagger) = B - v w^dagger - w v^dagger.
        let off = k + 1;
        let m = n - off;
        p.clear();
        for i in 0..m {
            let row = &a.row(off + i)[off..];
            p.push(row.iter().zip(&v).map(|(b, x)| b * x).sum::<Complex64>());
        }
        let s: f64 = v.iter().zip(&p).map(|(x, y)| (x.conj() * y).re).sum();
        for (pi, vi) in p.iter_mut().zip(&v) {
            *pi = *pi * 2.0 - vi * (2.0 * s);
        }
        let w = &p;
        for i in 0..m {
            for j in 0..m {
                let upd = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[(off + i, off + j)] -= upd;
            }
        }

        a[(off, k)] = alpha;
        a[(k, off)] = alpha.conj();
        for i in off + 1..n {
            a[(i, k)] = zero;
            a[(k, i)] = zero;
        }

        for r in 0..n {
            let row = &q.row(r)[off..];
            let qv: Complex64 = row.iter().zip(&v).map(|(x, y)| x * y).sum();
            for j in 0..m {
                q[(r, off + j)] -= qv * v[j].conj() * 2.0;
            }
        }
    }
}

/// Implicit QL on the symmetric tridiagonal `(d, e)` where `e[i]` couples
/// `i` and `i + 1` and `e[n-1] = 0`. Rotations are applied to the rows of `zt`.
fn tql2(d: &mut [f64], e: &mut [f64], zt: &mut [f64], n: usize) -> Result<()> {
    let eps = f64::EPSILON;
    let mut shift = 0.0;
    let mut tst1 = 0.0f64;
    let mut total = 0usize;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                total += 1;
                if iter > MAX_SWEEPS_PER_EIGENVALUE {
                    return Err(Error::NoConvergence { iterations: total });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                shift += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    let (head, tail) = zt.split_at_mut((i + 1) * n);
                    let zi = &mut head[i * n..];
                    let zi1 = &mut tail[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let t = *b;
                        *b = s * *a + c * t;
                        *a = c * *a - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if !(e[l].abs() > eps * tst1) {
                    break;
                }
            }
        }
        d[l] += shift;
        e[l] = 0.0;
    }
    Ok(())
}
