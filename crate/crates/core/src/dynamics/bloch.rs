// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Bloch-vector equations of motion.

use serde::{Deserialize, Serialize};

use crate::qcore::BlochVector;

/// Precession frequencies and relaxation parameters for the Bloch equations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochFieldSpec {
    pub omega_x: f64,
    pub omega_y: f64,
    pub omega_z: f64,
    /// Equilibrium longitudinal magnetization.
    pub m0: f64,
    pub t1: f64,
    /// Transverse relaxation time. `None` disables transverse damping; only
    /// [`BlochMode::Standard`] reads it.
    #[serde(default)]
    pub t2: Option<f64>,
}

impl BlochFieldSpec {
    pub fn omega(&self) -> BlochVector {
        BlochVector::new(self.omega_x, self.omega_y, self.omega_z)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlochMode {
    /// The three component equations exactly as printed in the source model,
    /// including their unusual sign pattern and the lack of T2 damping.
    PaperLiteral,
    /// `dM/dt = M × ω − (Mx/T2, My/T2, (Mz − M0)/T1)`.
    #[default]
    Standard,
}

/// `dM/dt` for the chosen reading of the Bloch equations.
///
/// In [`BlochMode::Standard`] the precession term is `M × ω`, so a field
/// `ω = (0, 0, w)` with `w > 0` turns `(1, 0, 0)` toward `(0, −1, 0)`. The
/// density-matrix dynamics of `L₀ = ½Δω σz` correspond to `ω_z = −Δω`.
pub fn bloch_rhs(m: &BlochVector, field: &BlochFieldSpec, mode: BlochMode) -> BlochVector {
    let (wx, wy, wz) = (field.omega_x, field.omega_y, field.omega_z);
    match mode {
        BlochMode::PaperLiteral => BlochVector::new(
            wy * m.y - wz * m.z,
            -wx * m.x + wz * m.z,
            -wx * m.x - wy * m.y - (m.z - field.m0) / field.t1,
        ),
        BlochMode::Standard => {
            let p = m.cross(&field.omega());
            let transverse = field.t2.map_or(0.0, |t2| 1.0 / t2);
            BlochVector::new(
                p.x - m.x * transverse,
                p.y - m.y * transverse,
                p.z - (m.z - field.m0) / field.t1,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(wz: f64, m0: f64, t1: f64) -> BlochFieldSpec {
        BlochFieldSpec {
            omega_x: 0.0,
            omega_y: 0.0,
            omega_z: wz,
            m0,
            t1,
            t2: Some(0.3),
        }
    }

    #[test]
    fn paper_literal_moves_the_aligned_equilibrium() {
        let (wz, m0) = (3.0, 0.4);
        let d = bloch_rhs(&BlochVector::new(0., 0., m0), &field(wz, m0, 2.0), BlochMode::PaperLiteral);
        assert_eq!(d, BlochVector::new(-wz * m0, wz * m0, 0.0));
    }

    #[test]
    fn standard_aligned_equilibrium_is_fixed() {
        let d = bloch_rhs(&BlochVector::new(0., 0., 0.4), &field(3.0, 0.4, 2.0), BlochMode::Standard);
        assert_eq!(d, BlochVector::new(0., 0., 0.));
    }

    #[test]
    fn standard_precession_sign() {
        let w = 2.5;
        let mut f = field(w, 0.0, 1e12);
        f.t2 = None;
        let d = bloch_rhs(&BlochVector::new(1., 0., 0.), &f, BlochMode::Standard);
        assert_eq!(d.x, 0.0);
        assert_eq!(d.y, -w);
        assert!(d.z.abs() < 1e-300);
    }

    #[test]
    fn standard_parallel_field_is_stationary() {
        // M parallel to ω with Mz = M0: precession vanishes and T2 plays no role
        // once the transverse part is zero.
        let f = BlochFieldSpec {
            omega_x: 0.0,
            omega_y: 0.0,
            omega_z: -1.3,
            m0: -0.7,
            t1: 0.9,
            t2: Some(0.01),
        };
        let d = bloch_rhs(&BlochVector::new(0., 0., -0.7), &f, BlochMode::Standard);
        assert_eq!(d, BlochVector::new(0., 0., 0.));
    }
}
