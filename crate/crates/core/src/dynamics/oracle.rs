// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form solutions used as validation references.

use super::{DynamicsError, Trajectory};
use crate::qcore::{bloch_to_density, density_to_bloch, BlochVector, DensityMatrix};

/// `ρ(t) = ρ_eq + (ρ0 − ρ_eq) e^{−Γt}`, the exact solution with `L = 0`.
pub fn closed_form_relaxation(
    rho0: &DensityMatrix,
    rho_eq: &DensityMatrix,
    gamma: f64,
    t: f64,
) -> Result<DensityMatrix, DynamicsError> {
    if !(gamma >= 0.0 && gamma.is_finite()) || !(t >= 0.0 && t.is_finite()) {
        return Err(DynamicsError::InvalidParameter(format!(
            "relaxation oracle needs gamma >= 0 and t >= 0 (got {gamma}, {t})"
        )));
    }
    if rho0.dim() != rho_eq.dim() {
        return Err(DynamicsError::DimensionMismatch {
            expected: rho0.dim(),
            found: rho_eq.dim(),
        });
    }
    if t == 0.0 || gamma == 0.0 {
        return Ok(*rho0);
    }
    let decay = (-gamma * t).exp();
    let m = *rho_eq.matrix() + (*rho0.matrix() - *rho_eq.matrix()).scale(decay);
    // Convex combination of two valid states.
    Ok(DensityMatrix::new_unchecked(m))
}

/// Rotation of `r0` about z by `Δω·t`.
///
/// Sense matches commutator-mode evolution under `½Δω σz`: for `Δω > 0`,
/// `(1, 0, 0)` turns toward `(0, 1, 0)`.
pub fn closed_form_precession(r0: &BlochVector, delta_omega: f64, t: f64) -> BlochVector {
    if t == 0.0 {
        return *r0;
    }
    let (s, c) = (delta_omega * t).sin_cos();
    BlochVector::new(r0.x * c - r0.y * s, r0.x * s + r0.y * c, r0.z)
}

/// Relaxation oracle sampled on `times`.
pub fn relaxation_trajectory(
    rho0: &DensityMatrix,
    rho_eq: &DensityMatrix,
    gamma: f64,
    times: &[f64],
) -> Result<Trajectory, DynamicsError> {
    let states = times
        .iter()
        .map(|&t| closed_form_relaxation(rho0, rho_eq, gamma, t))
        .collect::<Result<Vec<_>, _>>()?;
    Trajectory::new(times.to_vec(), states, 0.0)
}

/// Precession oracle sampled on `times`; single qubit only.
pub fn precession_trajectory(
    rho0: &DensityMatrix,
    delta_omega: f64,
    times: &[f64],
) -> Result<Trajectory, DynamicsError> {
    let r0 = density_to_bloch(rho0)?;
    let states = times
        .iter()
        .map(|&t| bloch_to_density(&closed_form_precession(&r0, delta_omega, t)))
        .collect::<Result<Vec<_>, _>>()?;
    Trajectory::new(times.to_vec(), states, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    #[test]
    fn relaxation_examples() {
        let ground = DensityMatrix::ground(2).unwrap();
        let excited = DensityMatrix::excited(2).unwrap();
        assert_eq!(closed_form_relaxation(&excited, &ground, 1.0, 0.0).unwrap(), excited);
        assert_eq!(closed_form_relaxation(&excited, &ground, 0.0, 7.0).unwrap(), excited);
        let half = closed_form_relaxation(&excited, &ground, 1.0, LN_2).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(half.matrix().max_abs_diff(mixed.matrix()) < 1e-15);
        assert!(closed_form_relaxation(&excited, &ground, -1.0, 1.0).is_err());
    }

    #[test]
    fn precession_examples() {
        let r0 = BlochVector::new(0.3, -0.4, 0.5);
        assert_eq!(closed_form_precession(&r0, 3.0, 0.0), r0);
        let pole = BlochVector::new(0., 0., 1.);
        assert_eq!(closed_form_precession(&pole, 9.1, 2.3), pole);
        let quarter = closed_form_precession(&BlochVector::new(1., 0., 0.), 2.0 * PI, 0.25);
        assert!(quarter.max_abs_diff(&BlochVector::new(0., 1., 0.)) < 1e-15);
    }
}
