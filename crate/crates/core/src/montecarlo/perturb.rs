// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Random perturbation of noise parameters, frequency and initial state.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::seed::{run_rng, standard_normal, uniform};
use super::MonteCarloError;
use crate::dynamics::{HamiltonianSpec, NoiseSpec};
use crate::qcore::{density_to_bloch, kron, pauli, BlochVector, CMatrix, DensityMatrix, PauliAxis};

/// Widths of the random perturbations. All zero means no perturbation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PerturbationSpec {
    /// Relative Gaussian jitter on T1.
    pub t1_rel_sigma: f64,
    /// Relative Gaussian jitter on T2.
    pub t2_rel_sigma: f64,
    /// Absolute Gaussian shift of Δω, rad/s.
    pub delta_omega_abs_sigma: f64,
    /// Half-angle (radians) of the cone the initial Bloch vector is tilted
    /// into.
    pub initial_bloch_cone_angle: f64,
}

impl PerturbationSpec {
    pub fn validate(&self) -> Result<(), MonteCarloError> {
        let fields = [
            ("t1_rel_sigma", self.t1_rel_sigma),
            ("t2_rel_sigma", self.t2_rel_sigma),
            ("delta_omega_abs_sigma", self.delta_omega_abs_sigma),
            ("initial_bloch_cone_angle", self.initial_bloch_cone_angle),
        ];
        for (name, v) in fields {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(MonteCarloError::InvalidSpec(format!(
                    "{name} must be finite and >= 0 (got {v})"
                )));
            }
        }
        if self.initial_bloch_cone_angle > std::f64::consts::PI {
            return Err(MonteCarloError::InvalidSpec(format!(
                "initial_bloch_cone_angle must be <= pi (got {})",
                self.initial_bloch_cone_angle
            )));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.t1_rel_sigma == 0.0
            && self.t2_rel_sigma == 0.0
            && self.delta_omega_abs_sigma == 0.0
            && self.initial_bloch_cone_angle == 0.0
    }
}

/// Draws one perturbed copy of the inputs from `seed`.
///
/// Draw order is fixed: T1, T2, Δω, then the cone rotation; a component whose
/// width is zero consumes no randomness and is returned unchanged.
///
/// - `T' = T·(1 + σ·N)`, redrawn until positive.
/// - `Δω' = Δω + σ·N`.
/// - The initial state is conjugated by `U = exp(−iθ n·σ/2)` (by `U⊗U` for
///   two qubits), which rotates Bloch vectors by `θ` about `n`. `cos θ` is
///   uniform on `[cos α, 1]`, so a single-qubit Bloch direction lands
///   uniformly on the spherical cap of half-angle `α`; `n` is uniform on the
///   circle perpendicular to the Bloch vector, or uniform on the sphere when
///   there is no single Bloch direction (two qubits, or the zero vector).
///
/// A gamma override in `noise` is kept as is, so T1/T2 jitter has no effect
/// on the dynamics when one is set.
pub fn perturb(
    h: &HamiltonianSpec,
    noise: &NoiseSpec,
    rho0: &DensityMatrix,
    spec: &PerturbationSpec,
    seed: u64,
) -> Result<(HamiltonianSpec, NoiseSpec, DensityMatrix), MonteCarloError> {
    spec.validate()?;
    rho0.validate()?;
    let mut h = *h;
    let mut noise = *noise;
    let mut rho = *rho0;
    if spec.is_zero() {
        return Ok((h, noise, rho));
    }
    let mut rng = run_rng(seed);
    if spec.t1_rel_sigma > 0.0 {
        noise.t1 = jitter_positive(&mut rng, noise.t1, spec.t1_rel_sigma);
    }
    if spec.t2_rel_sigma > 0.0 {
        noise.t2 = jitter_positive(&mut rng, noise.t2, spec.t2_rel_sigma);
    }
    if spec.delta_omega_abs_sigma > 0.0 {
        h.delta_omega += spec.delta_omega_abs_sigma * standard_normal(&mut rng);
    }
    if spec.initial_bloch_cone_angle > 0.0 {
        rho = cone_rotate(&mut rng, &rho, spec.initial_bloch_cone_angle)?;
    }
    Ok((h, noise, rho))
}

fn jitter_positive(rng: &mut impl Rng, value: f64, rel_sigma: f64) -> f64 {
    loop {
        let candidate = value * (1.0 + rel_sigma * standard_normal(rng));
        if candidate > 0.0 && candidate.is_finite() {
            return candidate;
        }
    }
}

fn unit_sphere(rng: &mut impl Rng) -> BlochVector {
    let z = 2.0 * uniform(rng) - 1.0;
    let phi = std::f64::consts::TAU * uniform(rng);
    let rho = (1.0 - z * z).max(0.0).sqrt();
    BlochVector::new(rho * phi.cos(), rho * phi.sin(), z)
}

/// Unit vector perpendicular to `r`, uniform in angle.
fn perpendicular(rng: &mut impl Rng, r: &BlochVector) -> BlochVector {
    let u = r.scale(1.0 / r.norm());
    let helper = if u.x.abs() < 0.9 {
        BlochVector::new(1.0, 0.0, 0.0)
    } else {
        BlochVector::new(0.0, 1.0, 0.0)
    };
    let e1 = u.cross(&helper);
    let e1 = e1.scale(1.0 / e1.norm());
    let e2 = u.cross(&e1);
    let phi = std::f64::consts::TAU * uniform(rng);
    let (s, c) = phi.sin_cos();
    BlochVector::new(
        c * e1.x + s * e2.x,
        c * e1.y + s * e2.y,
        c * e1.z + s * e2.z,
    )
}

/// `exp(−iθ n·σ/2) = cos(θ/2) I − i sin(θ/2) n·σ`.
pub(crate) fn rotation_unitary(axis: &BlochVector, theta: f64) -> CMatrix {
    let (s, c) = (0.5 * theta).sin_cos();
    let generator = pauli(PauliAxis::X).scale(axis.x)
        + pauli(PauliAxis::Y).scale(axis.y)
        + pauli(PauliAxis::Z).scale(axis.z);
    CMatrix::identity(2).scale(c) + generator.scale_complex(Complex64::new(0.0, -s))
}

fn cone_rotate(
    rng: &mut impl Rng,
    rho: &DensityMatrix,
    cone: f64,
) -> Result<DensityMatrix, MonteCarloError> {
    let cos_theta = 1.0 - uniform(rng) * (1.0 - cone.cos());
    let theta = cos_theta.clamp(-1.0, 1.0).acos();
    let bloch = if rho.dim() == 2 {
        Some(density_to_bloch(rho)?).filter(|r| r.norm() > 1e-12)
    } else {
        None
    };
    let axis = match bloch {
        Some(r) => perpendicular(rng, &r),
        None => unit_sphere(rng),
    };
    let u1 = rotation_unitary(&axis, theta);
    let u = if rho.dim() == 2 { u1 } else { kron(&u1, &u1) };
    let m = u * *rho.matrix() * u.dagger();
    // Unitary conjugation keeps every invariant up to round-off; symmetrise
    // and pin the trace so that round-off cannot accumulate.
    let m = (m + m.dagger()).scale(0.5);
    let m = m.scale(1.0 / m.trace().re);
    Ok(DensityMatrix::new(m)?)
}
