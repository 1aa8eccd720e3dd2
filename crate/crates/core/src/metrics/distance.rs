// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Entrywise distances and fidelity between density matrices.
//!
//! "Flattening" a matrix means the real vector of `(re, im)` parts of all
//! entries, so the Euclidean distance equals the Frobenius norm of `a − b`.

use super::MetricError;
use crate::qcore::{psd_sqrt, CMatrix, DensityMatrix, EIGEN_FLOOR};

fn difference(a: &DensityMatrix, b: &DensityMatrix) -> Result<CMatrix, MetricError> {
    if a.dim() != b.dim() {
        return Err(MetricError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(*a.matrix() - *b.matrix())
}

pub fn euclidean_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64, MetricError> {
    let d = difference(a, b)?;
    Ok(d.entries()
        .map(|z| z.re * z.re + z.im * z.im)
        .sum::<f64>()
        .sqrt())
}

pub fn manhattan_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64, MetricError> {
    let d = difference(a, b)?;
    Ok(d.entries().map(|z| z.re.abs() + z.im.abs()).sum())
}

/// Root mean square over the `2·dim²` flattened components.
pub fn rmsd(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64, MetricError> {
    let d = difference(a, b)?;
    let n = 2 * d.dim() * d.dim();
    let sum: f64 = d.entries().map(|z| z.re * z.re + z.im * z.im).sum();
    Ok((sum / n as f64).sqrt())
}

/// Uhlmann fidelity `(tr √(√a b √a))²`, clamped to `[0, 1]`.
///
/// Single qubits use `tr(ab) + 2√(det a · det b)`; two-qubit states go
/// through [`uhlmann_fidelity`].
pub fn fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64, MetricError> {
    if a.dim() != b.dim() {
        return Err(MetricError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    if a == b {
        // Identical data is the same state; skip the round-off of the formula.
        return Ok(1.0);
    }
    if a.dim() != 2 {
        return uhlmann_fidelity(a, b);
    }
    let overlap = (*a.matrix() * *b.matrix()).trace().re;
    let det_a = clamp_det(a.matrix().determinant().re)?;
    let det_b = clamp_det(b.matrix().determinant().re)?;
    Ok((overlap + 2.0 * (det_a * det_b).sqrt()).clamp(0.0, 1.0))
}

fn clamp_det(det: f64) -> Result<f64, MetricError> {
    if det < EIGEN_FLOOR {
        return Err(MetricError::NegativeDeterminant(det));
    }
    Ok(det.max(0.0))
}

/// Fidelity via eigendecompositions, valid for any supported dimension.
pub fn uhlmann_fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64, MetricError> {
    if a.dim() != b.dim() {
        return Err(MetricError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let root_a = psd_sqrt(a.matrix())?;
    let inner = root_a * *b.matrix() * root_a;
    // Symmetrise away the round-off before the second decomposition.
    let inner = (inner + inner.dagger()).scale(0.5);
    let root_inner = psd_sqrt(&inner)?;
    let t = root_inner.trace().re;
    Ok((t * t).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn states() -> (DensityMatrix, DensityMatrix, DensityMatrix) {
        (
            DensityMatrix::ground(2).unwrap(),
            DensityMatrix::excited(2).unwrap(),
            DensityMatrix::maximally_mixed(2).unwrap(),
        )
    }

    #[test]
    fn distance_examples() {
        let (g, e, m) = states();
        assert_eq!(euclidean_distance(&g, &g).unwrap(), 0.0);
        assert!((euclidean_distance(&g, &m).unwrap() - 1.0 / SQRT_2).abs() < 1e-15);
        assert!((euclidean_distance(&g, &e).unwrap() - SQRT_2).abs() < 1e-15);

        assert_eq!(manhattan_distance(&g, &g).unwrap(), 0.0);
        assert_eq!(manhattan_distance(&g, &m).unwrap(), 1.0);
        assert_eq!(manhattan_distance(&g, &e).unwrap(), 2.0);

        assert_eq!(rmsd(&g, &g).unwrap(), 0.0);
        assert!((rmsd(&g, &m).unwrap() - 0.25).abs() < 1e-15);
        assert!((rmsd(&g, &e).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fidelity_examples() {
        let (g, e, m) = states();
        assert!((fidelity(&g, &g).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fidelity(&g, &e).unwrap(), 0.0);
        assert!((fidelity(&g, &m).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn two_qubit_fidelity() {
        let g = DensityMatrix::ground(4).unwrap();
        let m = DensityMatrix::maximally_mixed(4).unwrap();
        assert!((fidelity(&g, &m).unwrap() - 0.25).abs() < 1e-14);
        assert!((fidelity(&m, &m).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch() {
        let a = DensityMatrix::ground(2).unwrap();
        let b = DensityMatrix::ground(4).unwrap();
        assert!(matches!(
            euclidean_distance(&a, &b),
            Err(MetricError::DimensionMismatch { .. })
        ));
        assert!(manhattan_distance(&a, &b).is_err());
        assert!(rmsd(&a, &b).is_err());
        assert!(fidelity(&a, &b).is_err());
    }
}
