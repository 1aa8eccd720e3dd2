// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Master-equation right-hand side and the fixed-step RK4 integrator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DynamicsError, EvolutionConfig, HamiltonianSpec, NoiseSpec, Trajectory};
use crate::qcore::{CMatrix, DensityMatrix, HERMITIAN_TOL, TRACE_TOL};

/// Trace deviation that aborts a [`MasterMode::PaperLiteral`] run.
pub const PAPER_LITERAL_TRACE_LIMIT: f64 = 1e-6;

/// Largest allowed `dt · max(|Δω|, |J|, Γ)`.
pub const STABILITY_LIMIT: f64 = 0.1;

/// How the Hamiltonian enters the master equation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MasterMode {
    /// `dρ/dt = −i[L, ρ] − Γ(ρ − ρ_eq)`
    #[default]
    Commutator,
    /// `dρ/dt = −iLρ − Γ(ρ − ρ_eq)`, one-sided as printed in the source
    /// model. Does not preserve trace or Hermiticity.
    PaperLiteral,
}

/// `dρ/dt` for the chosen mode.
pub fn master_rhs(
    rho: &CMatrix,
    l: &CMatrix,
    gamma: f64,
    rho_eq: &CMatrix,
    mode: MasterMode,
) -> Result<CMatrix, DynamicsError> {
    let dim = rho.dim();
    for other in [l.dim(), rho_eq.dim()] {
        if other != dim {
            return Err(DynamicsError::DimensionMismatch {
                expected: dim,
                found: other,
            });
        }
    }
    Ok(rhs_unchecked(rho, l, gamma, rho_eq, mode))
}

#[inline]
fn rhs_unchecked(
    rho: &CMatrix,
    l: &CMatrix,
    gamma: f64,
    rho_eq: &CMatrix,
    mode: MasterMode,
) -> CMatrix {
    let minus_i = Complex64::new(0.0, -1.0);
    let coherent = match mode {
        MasterMode::Commutator => l.commutator(rho),
        MasterMode::PaperLiteral => *l * *rho,
    };
    coherent.scale_complex(minus_i) - (*rho - *rho_eq).scale(gamma)
}

/// State plus a running compensation term for Kahan-summed updates.
///
/// Plain `ρ += Δρ` loses the low bits of each small increment; over many
/// steps that round-off would swamp the O(dt⁴) truncation error.
struct CompensatedState {
    value: CMatrix,
    carry: CMatrix,
}

impl CompensatedState {
    fn new(value: CMatrix) -> Self {
        Self {
            value,
            carry: CMatrix::zeros(value.dim()),
        }
    }

    fn add(&mut self, increment: &CMatrix) {
        let n = self.value.dim();
        for i in 0..n {
            for j in 0..n {
                let y = increment[(i, j)] - self.carry[(i, j)];
                let s = self.value[(i, j)];
                let t = s + y;
                self.carry[(i, j)] = (t - s) - y;
                self.value[(i, j)] = t;
            }
        }
    }
}

fn rk4_increment(
    rho: &CMatrix,
    l: &CMatrix,
    gamma: f64,
    rho_eq: &CMatrix,
    mode: MasterMode,
    h: f64,
) -> CMatrix {
    let f = |r: &CMatrix| rhs_unchecked(r, l, gamma, rho_eq, mode);
    let k1 = f(rho);
    let k2 = f(&(*rho + k1.scale(0.5 * h)));
    let k3 = f(&(*rho + k2.scale(0.5 * h)));
    let k4 = f(&(*rho + k3.scale(h)));
    (k1 + (k2 + k3).scale(2.0) + k4).scale(h / 6.0)
}

/// Step sizes covering `[0, t_end]`: whole steps of `dt`, then one shorter
/// step if `t_end` is not a multiple of `dt`.
pub(crate) fn step_plan(dt: f64, t_end: f64) -> (usize, Option<f64>) {
    if t_end == 0.0 {
        return (0, None);
    }
    let whole = (t_end / dt * (1.0 + 1e-12)).floor() as usize;
    let remainder = t_end - whole as f64 * dt;
    if remainder > 1e-9 * dt {
        (whole, Some(remainder))
    } else {
        (whole, None)
    }
}

/// Integrates the master equation with classical RK4 at a fixed step.
///
/// The returned trajectory starts at `t = 0` and holds every
/// `record_stride`-th step plus the final time. In commutator mode each step
/// is checked for trace and Hermiticity drift and every recorded state is
/// fully validated. In paper-literal mode the run stops at the first step
/// whose trace departs from one by more than [`PAPER_LITERAL_TRACE_LIMIT`].
pub fn evolve(
    config: &EvolutionConfig,
    h: &HamiltonianSpec,
    noise: &NoiseSpec,
) -> Result<Trajectory, DynamicsError> {
    config.validate()?;
    h.validate()?;
    noise.validate()?;
    let dim = h.dim();
    let initial = config.initial_state;
    for found in [initial.dim(), noise.rho_eq.dim()] {
        if found != dim {
            return Err(DynamicsError::DimensionMismatch {
                expected: dim,
                found,
            });
        }
    }
    let gamma = noise.gamma()?;
    check_stability(config.dt, h, gamma)?;

    let l = h.operator()?;
    let rho_eq = *noise.rho_eq.matrix();
    let mode = config.master_mode;
    let (whole, partial) = step_plan(config.dt, config.t_end);
    let total = whole + usize::from(partial.is_some());

    let mut times = vec![0.0];
    let mut states = vec![initial];
    let mut state = CompensatedState::new(*initial.matrix());

    for step in 1..=total {
        let h_step = if step <= whole {
            config.dt
        } else {
            partial.unwrap_or(config.dt)
        };
        let increment = rk4_increment(&state.value, &l, gamma, &rho_eq, mode, h_step);
        state.add(&increment);
        let time = if step == total {
            config.t_end
        } else {
            step as f64 * config.dt
        };
        let rho = state.value;

        match mode {
            MasterMode::Commutator => {
                let drift = (rho.trace() - Complex64::new(1.0, 0.0)).norm();
                let residual = rho.hermiticity_residual();
                if !rho.is_finite() || drift > TRACE_TOL || residual > HERMITIAN_TOL {
                    let source = DensityMatrix::new(rho)
                        .err()
                        .unwrap_or(crate::qcore::QcoreError::NonFinite);
                    return Err(DynamicsError::InvariantViolation { step, time, source });
                }
            }
            MasterMode::PaperLiteral => {
                let trace = rho.trace();
                if (trace - Complex64::new(1.0, 0.0)).norm() > PAPER_LITERAL_TRACE_LIMIT {
                    return Err(DynamicsError::PaperLiteralDivergence {
                        step,
                        time,
                        trace_re: trace.re,
                        trace_im: trace.im,
                    });
                }
            }
        }

        if step % config.record_stride == 0 || step == total {
            let recorded = match mode {
                MasterMode::Commutator => DensityMatrix::new(rho)
                    .map_err(|source| DynamicsError::InvariantViolation { step, time, source })?,
                MasterMode::PaperLiteral => DensityMatrix::new_unchecked(rho),
            };
            times.push(time);
            states.push(recorded);
        }
    }

    Trajectory::new(times, states, config.dt)
}

/// Rejects steps where `dt · max(|Δω|, |J|, Γ)` exceeds [`STABILITY_LIMIT`].
pub fn check_stability(dt: f64, h: &HamiltonianSpec, gamma: f64) -> Result<(), DynamicsError> {
    let coupling = if h.coupling_model == super::CouplingModel::None {
        0.0
    } else {
        h.coupling_j.abs()
    };
    let rate = h.delta_omega.abs().max(coupling).max(gamma);
    let product = dt * rate;
    if product > STABILITY_LIMIT {
        return Err(DynamicsError::StabilityGuard {
            product,
            limit: STABILITY_LIMIT,
        });
    }
    Ok(())
}
