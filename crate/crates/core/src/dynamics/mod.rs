// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Hamiltonians, relaxation and time evolution of qubit density matrices.

mod bloch;
mod hamiltonian;
mod master;
mod oracle;

use thiserror::Error;

use crate::qcore::{DensityMatrix, QcoreError};

pub use bloch::{bloch_rhs, BlochFieldSpec, BlochMode};
pub use hamiltonian::{
    decoherence_rate, free_hamiltonian, interaction_hamiltonian, CouplingModel, HamiltonianSpec,
};
pub use master::{
    check_stability, evolve, master_rhs, MasterMode, PAPER_LITERAL_TRACE_LIMIT, STABILITY_LIMIT,
};
pub use oracle::{
    closed_form_precession, closed_form_relaxation, precession_trajectory, relaxation_trajectory,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("stability guard violated: dt * max rate = {product} exceeds {limit}")]
    StabilityGuard { product: f64, limit: f64 },
    #[error("invariant violation at step {step} (t = {time}): {source}")]
    InvariantViolation {
        step: usize,
        time: f64,
        #[source]
        source: QcoreError,
    },
    #[error(
        "trace departed from 1 at step {step} (t = {time}): trace = {trace_re} + {trace_im}i"
    )]
    PaperLiteralDivergence {
        step: usize,
        time: f64,
        trace_re: f64,
        trace_im: f64,
    },
    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),
    #[error(transparent)]
    State(#[from] QcoreError),
}

/// Relaxation parameters and the state the dissipator pulls toward.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec {
    /// Longitudinal relaxation time, seconds.
    pub t1: f64,
    /// Transverse relaxation time, seconds.
    pub t2: f64,
    /// Replaces the rate derived from `t1` and `t2` when set.
    pub gamma_override: Option<f64>,
    pub rho_eq: DensityMatrix,
}

impl NoiseSpec {
    /// Ground-state equilibrium of the given dimension.
    pub fn new(t1: f64, t2: f64, dim: usize) -> Result<Self, DynamicsError> {
        let spec = Self {
            t1,
            t2,
            gamma_override: None,
            rho_eq: DensityMatrix::ground(dim)?,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Fixed rate `gamma`; `t1`/`t2` are kept only for bookkeeping.
    pub fn with_rate(gamma: f64, rho_eq: DensityMatrix) -> Result<Self, DynamicsError> {
        let spec = Self {
            t1: 1.0,
            t2: 1.0,
            gamma_override: Some(gamma),
            rho_eq,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        if !(self.t1 > 0.0 && self.t1.is_finite() && self.t2 > 0.0 && self.t2.is_finite()) {
            return Err(DynamicsError::InvalidParameter(format!(
                "T1 and T2 must be positive and finite (got {}, {})",
                self.t1, self.t2
            )));
        }
        if let Some(g) = self.gamma_override {
            if !(g >= 0.0 && g.is_finite()) {
                return Err(DynamicsError::InvalidParameter(format!(
                    "gamma_override must be >= 0 (got {g})"
                )));
            }
        }
        self.rho_eq.validate()?;
        Ok(())
    }

    /// The override if present, otherwise [`decoherence_rate`].
    pub fn gamma(&self) -> Result<f64, DynamicsError> {
        match self.gamma_override {
            Some(g) => Ok(g),
            None => decoherence_rate(self.t1, self.t2),
        }
    }
}

/// Integrator settings and initial state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolutionConfig {
    /// Integrator step, seconds.
    pub dt: f64,
    /// Final time, seconds.
    pub t_end: f64,
    /// Record every k-th step (the final step is always recorded).
    pub record_stride: usize,
    pub master_mode: MasterMode,
    pub initial_state: DensityMatrix,
}

impl EvolutionConfig {
    pub fn new(dt: f64, t_end: f64, initial_state: DensityMatrix) -> Self {
        Self {
            dt,
            t_end,
            record_stride: 1,
            master_mode: MasterMode::Commutator,
            initial_state,
        }
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(DynamicsError::InvalidParameter(format!(
                "dt must be positive (got {})",
                self.dt
            )));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(DynamicsError::InvalidParameter(format!(
                "t_end must be >= 0 (got {})",
                self.t_end
            )));
        }
        if self.t_end > 0.0 && self.dt > self.t_end {
            return Err(DynamicsError::InvalidParameter(format!(
                "dt ({}) exceeds t_end ({})",
                self.dt, self.t_end
            )));
        }
        if self.record_stride == 0 {
            return Err(DynamicsError::InvalidParameter(
                "record_stride must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Time-indexed density matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<DensityMatrix>,
    dt: f64,
}

impl Trajectory {
    /// Checks equal lengths, strictly increasing finite times and a common
    /// dimension. `dt` is the producing integrator's step (0 if unknown).
    pub fn new(times: Vec<f64>, states: Vec<DensityMatrix>, dt: f64) -> Result<Self, DynamicsError> {
        if times.len() != states.len() {
            return Err(DynamicsError::InvalidTrajectory(format!(
                "{} times but {} states",
                times.len(),
                states.len()
            )));
        }
        if let Some(t) = times.iter().find(|t| !t.is_finite()) {
            return Err(DynamicsError::InvalidTrajectory(format!("non-finite time {t}")));
        }
        if let Some(k) = times.windows(2).position(|w| w[1] <= w[0]) {
            return Err(DynamicsError::InvalidTrajectory(format!(
                "times not strictly increasing at index {}",
                k + 1
            )));
        }
        if let Some(first) = states.first() {
            if let Some(bad) = states.iter().find(|s| s.dim() != first.dim()) {
                return Err(DynamicsError::DimensionMismatch {
                    expected: first.dim(),
                    found: bad.dim(),
                });
            }
        }
        Ok(Self { times, states, dt })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &DensityMatrix)> {
        self.times.last().copied().zip(self.states.last())
    }

    pub fn dim(&self) -> Option<usize> {
        self.states.first().map(DensityMatrix::dim)
    }
}
