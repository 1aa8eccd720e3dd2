// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Eigenvalues of small Hermitian matrices.
//!
//! The 2×2 case uses the closed-form roots of the characteristic polynomial.
//! Larger matrices go through a cyclic complex Jacobi sweep, which is exact
//! enough for dimension 4 and also yields eigenvectors.

use num_complex::Complex64;

use super::matrix::{CMatrix, ZERO};
use super::{QcoreError, HERMITIAN_TOL};

/// Both eigenvalues of a 2×2 Hermitian matrix, largest first.
pub fn hermitian_eigenvalues_2x2(m: &CMatrix) -> Result<(f64, f64), QcoreError> {
    if m.dim() != 2 {
        return Err(QcoreError::UnsupportedDimension(m.dim()));
    }
    let residual = m.hermiticity_residual();
    if residual > HERMITIAN_TOL {
        return Err(QcoreError::NotHermitian { residual });
    }
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let half_gap = (0.5 * (a - d)).hypot(b.norm());
    Ok((mean + half_gap, mean - half_gap))
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Unitary whose columns are the matching eigenvectors.
    pub vectors: CMatrix,
}

const MAX_SWEEPS: usize = 64;

/// Jacobi eigendecomposition of a Hermitian matrix of any supported size.
pub fn hermitian_eigen(m: &CMatrix) -> Result<HermitianEigen, QcoreError> {
    let residual = m.hermiticity_residual();
    if residual > HERMITIAN_TOL {
        return Err(QcoreError::NotHermitian { residual });
    }
    let n = m.dim();
    // Symmetrise so the rotations act on an exactly Hermitian matrix.
    let mut a = (*m + m.dagger()).scale(0.5);
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[(p, q)];
                let g_abs = g.norm();
                if g_abs <= 1e-300 {
                    continue;
                }
                // Phase that makes the (p, q) element real and positive.
                let phase = (g / g_abs).conj();
                let alpha = a[(p, p)].re;
                let beta = a[(q, q)].re;
                let theta = (beta - alpha) / (2.0 * g_abs);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let mut u = CMatrix::identity(n);
                u[(p, p)] = Complex64::new(c, 0.0);
                u[(p, q)] = Complex64::new(s, 0.0);
                u[(q, p)] = phase * (-s);
                u[(q, q)] = phase * c;

                a = u.dagger() * a * u;
                // Clean the annihilated pair and the diagonal imaginary parts.
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                v = v * u;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = CMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues of a Hermitian matrix in descending order.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>, QcoreError> {
    if m.dim() == 2 {
        let (hi, lo) = hermitian_eigenvalues_2x2(m)?;
        return Ok(vec![hi, lo]);
    }
    Ok(hermitian_eigen(m)?.values)
}

/// Principal square root of a positive-semidefinite Hermitian matrix.
///
/// Eigenvalues at or below the round-off floor `dim·ε·λ_max` are treated as
/// zero. The square root would otherwise turn an `O(ε)` round-off
/// eigenvalue of a rank-deficient matrix into an `O(√ε) ≈ 1e-8` entry.
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix, QcoreError> {
    let eig = hermitian_eigen(m)?;
    let n = m.dim();
    let largest = eig.values.iter().fold(0.0f64, |acc, &l| acc.max(l.abs()));
    let floor = n as f64 * f64::EPSILON * largest;
    let roots: Vec<Complex64> = eig
        .values
        .iter()
        .map(|&l| Complex64::new(if l > floor { l.sqrt() } else { 0.0 }, 0.0))
        .collect();
    let d = CMatrix::diag(&roots);
    let out = eig.vectors * d * eig.vectors.dagger();
    debug_assert_eq!(out.dim(), n);
    Ok(out)
}
