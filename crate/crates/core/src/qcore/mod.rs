// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Qubit states and the small-matrix algebra underneath them.
//!
//! Everything here is a value type; operations are pure functions.

mod eigen;
mod matrix;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use eigen::{
    hermitian_eigen, hermitian_eigenvalues, hermitian_eigenvalues_2x2, psd_sqrt, HermitianEigen,
};
pub use matrix::{kron, CMatrix, MAX_DIM};

use matrix::{I, ONE, ZERO};

/// Largest tolerated `‖ρ − ρ†‖_max`.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Largest tolerated `|trace(ρ) − 1|`.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues down to this value count as round-off and clamp to zero.
pub const EIGEN_FLOOR: f64 = -1e-9;
/// Tolerated deviation of `|α|² + |β|²` from one.
pub const NORM_TOL: f64 = 1e-9;
/// Tolerated deviation of a probability vector's sum from one.
pub const PROBABILITY_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QcoreError {
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("non-finite entry")]
    NonFinite,
    #[error("Hermiticity violation (residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("trace violation (trace {trace})")]
    TraceNotOne { trace: Complex64 },
    #[error("positivity violation (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("pure state is not normalized (|alpha|^2 + |beta|^2 = {norm_sqr})")]
    Unnormalized { norm_sqr: f64 },
    #[error("Bloch vector lies outside the unit ball (norm {norm})")]
    OutsideBlochBall { norm: f64 },
    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),
}

/// One of the three Pauli operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];
}

/// The Pauli matrix for `axis`.
pub fn pauli(axis: PauliAxis) -> CMatrix {
    let rows = match axis {
        PauliAxis::X => [[ZERO, ONE], [ONE, ZERO]],
        PauliAxis::Y => [[ZERO, -I], [I, ZERO]],
        PauliAxis::Z => [[ONE, ZERO], [ZERO, -ONE]],
    };
    CMatrix::from_rows(&rows).expect("2x2 literal")
}

/// `α|0⟩ + β|1⟩`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl PureState {
    /// Builds a state from amplitudes, rescaling them to unit norm.
    pub fn normalized(alpha: Complex64, beta: Complex64) -> Result<Self, QcoreError> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(QcoreError::Unnormalized {
                norm_sqr: norm * norm,
            });
        }
        Ok(Self {
            alpha: alpha / norm,
            beta: beta / norm,
        })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }
}

/// `ρ = |ψ⟩⟨ψ|`
pub fn pure_to_density(psi: &PureState) -> Result<DensityMatrix, QcoreError> {
    let norm_sqr = psi.norm_sqr();
    if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOL {
        return Err(QcoreError::Unnormalized { norm_sqr });
    }
    let amps = [psi.alpha, psi.beta];
    let m = CMatrix::from_fn(2, |i, j| amps[i] * amps[j].conj());
    DensityMatrix::new(m)
}

/// A Hermitian, unit-trace, positive-semidefinite matrix of dimension 2 or 4.
///
/// [`DensityMatrix::new`] enforces the invariants. Intermediate states of
/// non-physical dynamics go through [`DensityMatrix::new_unchecked`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self, QcoreError> {
        check_density(&m)?;
        Ok(Self(m))
    }

    pub fn new_unchecked(m: CMatrix) -> Self {
        Self(m)
    }

    /// `|0…0⟩⟨0…0|`
    pub fn ground(dim: usize) -> Result<Self, QcoreError> {
        check_dim(dim)?;
        let mut m = CMatrix::zeros(dim);
        m[(0, 0)] = ONE;
        Ok(Self(m))
    }

    /// `|1…1⟩⟨1…1|`
    pub fn excited(dim: usize) -> Result<Self, QcoreError> {
        check_dim(dim)?;
        let mut m = CMatrix::zeros(dim);
        m[(dim - 1, dim - 1)] = ONE;
        Ok(Self(m))
    }

    /// `I / dim`
    pub fn maximally_mixed(dim: usize) -> Result<Self, QcoreError> {
        check_dim(dim)?;
        Ok(Self(CMatrix::identity(dim).scale(1.0 / dim as f64)))
    }

    #[inline]
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// `trace(ρ²)`
    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>, QcoreError> {
        hermitian_eigenvalues(&self.0)
    }

    /// Re-checks the invariants, e.g. for states built unchecked.
    pub fn validate(&self) -> Result<(), QcoreError> {
        check_density(&self.0)
    }
}

impl From<DensityMatrix> for CMatrix {
    fn from(rho: DensityMatrix) -> CMatrix {
        rho.0
    }
}

fn check_dim(dim: usize) -> Result<(), QcoreError> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        Err(QcoreError::UnsupportedDimension(dim))
    }
}

fn check_density(m: &CMatrix) -> Result<(), QcoreError> {
    check_dim(m.dim())?;
    if !m.is_finite() {
        return Err(QcoreError::NonFinite);
    }
    let residual = m.hermiticity_residual();
    if residual > HERMITIAN_TOL {
        return Err(QcoreError::NotHermitian { residual });
    }
    let trace = m.trace();
    if (trace - ONE).norm() > TRACE_TOL {
        return Err(QcoreError::TraceNotOne { trace });
    }
    let min_eigenvalue = hermitian_eigenvalues(m)?
        .last()
        .copied()
        .unwrap_or(f64::NAN);
    if min_eigenvalue < EIGEN_FLOOR {
        return Err(QcoreError::NotPositive { min_eigenvalue });
    }
    Ok(())
}

/// Bloch-sphere coordinates of a single qubit, `ρ = ½(I + r·σ)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

/// `r_k = trace(ρ σ_k)`
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector, QcoreError> {
    if rho.dim() != 2 {
        return Err(QcoreError::UnsupportedDimension(rho.dim()));
    }
    let m = rho.matrix();
    let component = |axis| (*m * pauli(axis)).trace().re;
    Ok(BlochVector::new(
        component(PauliAxis::X),
        component(PauliAxis::Y),
        component(PauliAxis::Z),
    ))
}

/// `ρ = ½(I + r·σ)`
pub fn bloch_to_density(r: &BlochVector) -> Result<DensityMatrix, QcoreError> {
    let norm = r.norm();
    if !norm.is_finite() || norm > 1.0 + 1e-9 {
        return Err(QcoreError::OutsideBlochBall { norm });
    }
    let m = CMatrix::from_rows(&[
        [
            Complex64::new(0.5 * (1.0 + r.z), 0.0),
            Complex64::new(0.5 * r.x, -0.5 * r.y),
        ],
        [
            Complex64::new(0.5 * r.x, 0.5 * r.y),
            Complex64::new(0.5 * (1.0 - r.z), 0.0),
        ],
    ])?;
    // Norms in (1, 1 + 1e-9] leave eigenvalues of order -5e-10, inside the floor.
    DensityMatrix::new(m)
}

/// Non-negative weights summing to one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbabilityDistribution(Vec<f64>);

impl ProbabilityDistribution {
    pub fn new(weights: Vec<f64>) -> Result<Self, QcoreError> {
        if weights.is_empty() {
            return Err(QcoreError::InvalidDistribution("no outcomes".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(QcoreError::InvalidDistribution(format!(
                "weight {w} is negative or not finite"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > PROBABILITY_TOL {
            return Err(QcoreError::InvalidDistribution(format!(
                "weights sum to {sum}"
            )));
        }
        Ok(Self(weights))
    }

    /// Clamps round-off negatives (down to [`EIGEN_FLOOR`]) and rescales to
    /// unit sum.
    pub fn from_raw(raw: &[f64]) -> Result<Self, QcoreError> {
        if let Some(w) = raw.iter().find(|w| !w.is_finite() || **w < EIGEN_FLOOR) {
            return Err(QcoreError::NotPositive { min_eigenvalue: *w });
        }
        let clamped: Vec<f64> = raw.iter().map(|w| w.max(0.0)).collect();
        let sum: f64 = clamped.iter().sum();
        if sum <= 0.0 {
            return Err(QcoreError::InvalidDistribution("all weights vanish".into()));
        }
        Self::new(clamped.into_iter().map(|w| w / sum).collect())
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<f64>> for ProbabilityDistribution {
    type Error = QcoreError;

    fn try_from(weights: Vec<f64>) -> Result<Self, QcoreError> {
        Self::new(weights)
    }
}

impl From<ProbabilityDistribution> for Vec<f64> {
    fn from(p: ProbabilityDistribution) -> Vec<f64> {
        p.0
    }
}

/// Which outcome distribution to read off a density matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasurementBasis {
    /// Diagonal of ρ in the computational basis.
    #[default]
    Computational,
    /// Spectrum of ρ, largest eigenvalue first.
    Eigenbasis,
}

impl std::str::FromStr for MeasurementBasis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "computational" => Ok(Self::Computational),
            "eigenbasis" => Ok(Self::Eigenbasis),
            other => Err(format!("unknown basis '{other}'")),
        }
    }
}

impl std::fmt::Display for MeasurementBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Computational => "computational",
            Self::Eigenbasis => "eigenbasis",
        })
    }
}

pub fn measurement_distribution(
    rho: &DensityMatrix,
    basis: MeasurementBasis,
) -> Result<ProbabilityDistribution, QcoreError> {
    let raw: Vec<f64> = match basis {
        MeasurementBasis::Computational => {
            let m = rho.matrix();
            (0..m.dim()).map(|k| m[(k, k)].re).collect()
        }
        MeasurementBasis::Eigenbasis => rho.eigenvalues()?,
    };
    ProbabilityDistribution::from_raw(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(rows: &[[f64; 2]]) -> CMatrix {
        CMatrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn pauli_matrices_match_definition() {
        assert_eq!(pauli(PauliAxis::X), real(&[[0., 1.], [1., 0.]]));
        assert_eq!(
            pauli(PauliAxis::Y),
            CMatrix::from_rows(&[[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]]).unwrap()
        );
        assert_eq!(pauli(PauliAxis::Z), real(&[[1., 0.], [0., -1.]]));
    }

    #[test]
    fn pauli_algebra() {
        let id = CMatrix::identity(2);
        for axis in PauliAxis::ALL {
            let p = pauli(axis);
            assert!((p * p).max_abs_diff(&id) <= 1e-15);
            assert!(p.is_hermitian(0.0));
            assert_eq!(p.trace(), c(0., 0.));
            assert!((p * p.dagger()).max_abs_diff(&id) <= 1e-15);
        }
        let (x, y, z) = (pauli(PauliAxis::X), pauli(PauliAxis::Y), pauli(PauliAxis::Z));
        assert!((x * y).max_abs_diff(&z.scale_complex(I)) <= 1e-15);
        assert!((y * z).max_abs_diff(&x.scale_complex(I)) <= 1e-15);
        assert!((z * x).max_abs_diff(&y.scale_complex(I)) <= 1e-15);
    }

    #[test]
    fn pure_to_density_examples() {
        let zero = PureState { alpha: c(1., 0.), beta: c(0., 0.) };
        assert_eq!(*pure_to_density(&zero).unwrap().matrix(), real(&[[1., 0.], [0., 0.]]));
        let one = PureState { alpha: c(0., 0.), beta: c(1., 0.) };
        assert_eq!(*pure_to_density(&one).unwrap().matrix(), real(&[[0., 0.], [0., 1.]]));
        let plus = PureState {
            alpha: c(FRAC_1_SQRT_2, 0.),
            beta: c(FRAC_1_SQRT_2, 0.),
        };
        let rho = pure_to_density(&plus).unwrap();
        assert!(rho.matrix().max_abs_diff(&real(&[[0.5, 0.5], [0.5, 0.5]])) < 1e-15);
    }

    #[test]
    fn pure_to_density_rejects_unnormalized() {
        let psi = PureState { alpha: c(1., 0.), beta: c(0.1, 0.) };
        assert!(matches!(
            pure_to_density(&psi),
            Err(QcoreError::Unnormalized { .. })
        ));
    }

    #[test]
    fn bloch_examples() {
        let ground = DensityMatrix::ground(2).unwrap();
        assert_eq!(density_to_bloch(&ground).unwrap(), BlochVector::new(0., 0., 1.));
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert_eq!(density_to_bloch(&mixed).unwrap(), BlochVector::new(0., 0., 0.));
        let plus = DensityMatrix::new(real(&[[0.5, 0.5], [0.5, 0.5]])).unwrap();
        assert_eq!(density_to_bloch(&plus).unwrap(), BlochVector::new(1., 0., 0.));

        assert_eq!(bloch_to_density(&BlochVector::new(0., 0., 1.)).unwrap(), ground);
        assert_eq!(bloch_to_density(&BlochVector::new(0., 0., 0.)).unwrap(), mixed);
        assert_eq!(bloch_to_density(&BlochVector::new(1., 0., 0.)).unwrap(), plus);
    }

    #[test]
    fn bloch_errors() {
        assert!(matches!(
            density_to_bloch(&DensityMatrix::ground(4).unwrap()),
            Err(QcoreError::UnsupportedDimension(4))
        ));
        assert!(matches!(
            bloch_to_density(&BlochVector::new(0.8, 0.8, 0.)),
            Err(QcoreError::OutsideBlochBall { .. })
        ));
    }

    #[test]
    fn density_invariants_are_enforced() {
        assert!(matches!(
            DensityMatrix::new(real(&[[1., 0.1], [0., 0.]])),
            Err(QcoreError::NotHermitian { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(real(&[[0.6, 0.], [0., 0.6]])),
            Err(QcoreError::TraceNotOne { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(real(&[[1.01, 0.], [0., -0.01]])),
            Err(QcoreError::NotPositive { .. })
        ));
        assert!(DensityMatrix::new(CMatrix::identity(3).scale(1. / 3.)).is_err());
    }

    #[test]
    fn measurement_examples() {
        let ground = DensityMatrix::ground(2).unwrap();
        let plus = DensityMatrix::new(real(&[[0.5, 0.5], [0.5, 0.5]])).unwrap();
        let comp = MeasurementBasis::Computational;
        assert_eq!(measurement_distribution(&ground, comp).unwrap().weights(), &[1.0, 0.0]);
        assert_eq!(measurement_distribution(&plus, comp).unwrap().weights(), &[0.5, 0.5]);
        let eig = measurement_distribution(&plus, MeasurementBasis::Eigenbasis).unwrap();
        assert!((eig.weights()[0] - 1.0).abs() < 1e-15 && eig.weights()[1] < 1e-15);
    }

    #[test]
    fn measurement_clamps_round_off_negatives() {
        let m = real(&[[1.0 + 5e-10, 0.], [0., -5e-10]]);
        let rho = DensityMatrix::new(m).unwrap();
        for basis in [MeasurementBasis::Computational, MeasurementBasis::Eigenbasis] {
            let p = measurement_distribution(&rho, basis).unwrap();
            assert!(p.weights().iter().all(|&w| w >= 0.0));
            assert!((p.weights().iter().sum::<f64>() - 1.0).abs() <= 1e-10);
        }
        let bad = DensityMatrix::new_unchecked(real(&[[1.01, 0.], [0., -0.01]]));
        assert!(measurement_distribution(&bad, MeasurementBasis::Computational).is_err());
    }

    /// Brute-force real root finder for `det(m − λI)`, independent of the
    /// closed form: bracket with Gershgorin bounds, scan, then bisect.
    fn brute_force_roots(m: &CMatrix) -> (f64, f64) {
        let a = m[(0, 0)].re;
        let d = m[(1, 1)].re;
        let b2 = m[(0, 1)].norm_sqr();
        let p = |l: f64| (a - l) * (d - l) - b2;
        let radius = m[(0, 1)].norm();
        let lo = a.min(d) - radius - 1.0;
        let hi = a.max(d) + radius + 1.0;
        let n = 4000;
        let mut roots = Vec::new();
        let mut prev = lo;
        for k in 1..=n {
            let x = lo + (hi - lo) * k as f64 / n as f64;
            if p(prev) == 0.0 {
                roots.push(prev);
            } else if p(prev).signum() != p(x).signum() {
                let (mut l, mut r) = (prev, x);
                for _ in 0..200 {
                    let mid = 0.5 * (l + r);
                    if p(l).signum() == p(mid).signum() {
                        l = mid;
                    } else {
                        r = mid;
                    }
                }
                roots.push(0.5 * (l + r));
            }
            prev = x;
        }
        // Double root: the parabola only touches zero at its vertex.
        if roots.len() < 2 {
            let v = 0.5 * (a + d);
            return (v, v);
        }
        roots.sort_by(|x, y| y.total_cmp(x));
        (roots[0], roots[roots.len() - 1])
    }

    fn hermitian_2x2() -> impl Strategy<Value = CMatrix> {
        (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, d, br, bi)| {
            CMatrix::from_rows(&[[c(a, 0.), c(br, bi)], [c(br, -bi), c(d, 0.)]]).unwrap()
        })
    }

    fn bloch_ball() -> impl Strategy<Value = BlochVector> {
        (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
            .prop_filter("inside ball", |(x, y, z)| x * x + y * y + z * z <= 1.0)
            .prop_map(|(x, y, z)| BlochVector::new(x, y, z))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn eigenvalues_match_brute_force(m in hermitian_2x2()) {
            let (hi, lo) = hermitian_eigenvalues_2x2(&m).unwrap();
            let (bhi, blo) = brute_force_roots(&m);
            prop_assert!((hi - bhi).abs() <= 1e-10, "{hi} vs {bhi}");
            prop_assert!((lo - blo).abs() <= 1e-10, "{lo} vs {blo}");
            prop_assert!((hi + lo - m.trace().re).abs() <= 1e-12);
            prop_assert!(hi >= lo);
        }

        #[test]
        fn bloch_round_trip(r in bloch_ball()) {
            let back = density_to_bloch(&bloch_to_density(&r).unwrap()).unwrap();
            prop_assert!(back.max_abs_diff(&r) <= 1e-12);
        }

        #[test]
        fn pure_states_have_unit_rank(ar in -1.0..1.0f64, ai in -1.0..1.0f64,
                                      br in -1.0..1.0f64, bi in -1.0..1.0f64) {
            prop_assume!(ar.abs() + ai.abs() + br.abs() + bi.abs() > 1e-3);
            let psi = PureState::normalized(c(ar, ai), c(br, bi)).unwrap();
            let rho = pure_to_density(&psi).unwrap();
            let (hi, lo) = hermitian_eigenvalues_2x2(rho.matrix()).unwrap();
            prop_assert!((hi - 1.0).abs() <= 1e-10 && lo.abs() <= 1e-10);
        }

        #[test]
        fn distributions_are_normalized(r in bloch_ball(), excess in 0.0..1e-9f64) {
            // Stretch the Bloch vector past the sphere so the smaller
            // eigenvalue lands at -excess, inside [-1e-9, 0).
            prop_assume!(r.norm() > 1e-3);
            let n = r.scale((1.0 + 2.0 * excess) / r.norm());
            let m = CMatrix::from_rows(&[
                [c(0.5 * (1.0 + n.z), 0.), c(0.5 * n.x, -0.5 * n.y)],
                [c(0.5 * n.x, 0.5 * n.y), c(0.5 * (1.0 - n.z), 0.)],
            ]).unwrap();
            let rho = DensityMatrix::new_unchecked(m);
            for basis in [MeasurementBasis::Computational, MeasurementBasis::Eigenbasis] {
                let p = measurement_distribution(&rho, basis).unwrap();
                prop_assert!(p.weights().iter().all(|&w| w >= 0.0));
                prop_assert!((p.weights().iter().sum::<f64>() - 1.0).abs() <= 1e-10);
            }
        }
    }
}
