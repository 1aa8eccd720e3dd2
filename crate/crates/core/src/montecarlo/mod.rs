// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Seeded Monte-Carlo ensembles, parameter sweeps and the two-sample
//! Kolmogorov–Smirnov test.
//!
//! Reproducibility is part of the contract: runs are seeded per index with
//! [`derive_seed`], random draws use ChaCha8 and documented transforms, and
//! results are aggregated in index order regardless of scheduling.

mod ensemble;
mod ks;
mod perturb;
mod seed;
mod sweep;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::{
    closed_form_precession, closed_form_relaxation, evolve, DynamicsError, EvolutionConfig,
    HamiltonianSpec, NoiseSpec, Trajectory,
};
use crate::metrics::MetricError;
use crate::qcore::{bloch_to_density, density_to_bloch, DensityMatrix, QcoreError};

pub use ensemble::{
    run_ensemble, summarize, EnsembleSpec, EnsembleStatistics, Execution, MetricSummary, Z_95,
};
pub use ks::{kolmogorov_q, ks_two_sample, KsResult, KS_MIN_SAMPLES};
pub use perturb::{perturb, PerturbationSpec};
pub use seed::{derive_seed, run_rng, standard_normal, uniform};
pub use sweep::{apply_parameter, parameter_sweep, SweepParameter, SweepPoint, SweepScale, SweepSpec};

/// Largest accepted gap between a reference trajectory's last time and
/// `t_end`.
pub const REFERENCE_TIME_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonteCarloError {
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("need at least {min} samples, got {len}")]
    TooFewSamples { len: usize, min: usize },
    #[error("run {index} failed: {source}")]
    RunFailed {
        index: usize,
        #[source]
        source: Box<MonteCarloError>,
    },
    #[error("invalid reference: {0}")]
    Reference(String),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    State(#[from] QcoreError),
}

/// Closed-form references.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    /// `ρ_eq + (ρ0 − ρ_eq)e^{−Γt}`; exact when the Hamiltonian vanishes.
    Relaxation,
    /// Rotation about z by `Δω·t`; exact for a single qubit with `Γ = 0`.
    Precession,
}

impl OracleKind {
    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Relaxation => "relaxation",
            OracleKind::Precession => "precession",
        }
    }
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OracleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "relaxation" => Ok(OracleKind::Relaxation),
            "precession" => Ok(OracleKind::Precession),
            other => Err(format!("unknown oracle '{other}'")),
        }
    }
}

/// What the final state of each run is compared with.
#[derive(Clone, Debug, PartialEq)]
pub enum Reference {
    /// Last state of a given trajectory; its last time must equal `t_end`.
    Trajectory(Trajectory),
    /// Evolution of the unperturbed inputs.
    Nominal,
    /// A closed-form solution evaluated at `t_end`.
    Oracle(OracleKind),
}

/// Reference state at `config.t_end` for the given inputs.
pub fn reference_state(
    reference: &Reference,
    config: &EvolutionConfig,
    h: &HamiltonianSpec,
    noise: &NoiseSpec,
) -> Result<DensityMatrix, MonteCarloError> {
    match reference {
        Reference::Trajectory(traj) => {
            let (t, state) = traj
                .last()
                .ok_or_else(|| MonteCarloError::Reference("empty trajectory".into()))?;
            if (t - config.t_end).abs() > REFERENCE_TIME_TOL {
                return Err(MonteCarloError::Reference(format!(
                    "reference ends at t = {t}, run ends at t = {}",
                    config.t_end
                )));
            }
            Ok(*state)
        }
        Reference::Nominal => final_state(config, h, noise),
        Reference::Oracle(OracleKind::Relaxation) => Ok(closed_form_relaxation(
            &config.initial_state,
            &noise.rho_eq,
            noise.gamma()?,
            config.t_end,
        )?),
        Reference::Oracle(OracleKind::Precession) => {
            let r0 = density_to_bloch(&config.initial_state)?;
            let r = closed_form_precession(&r0, h.delta_omega, config.t_end);
            Ok(bloch_to_density(&r)?)
        }
    }
}

/// Final state of one evolution, recording nothing in between.
pub(crate) fn final_state(
    config: &EvolutionConfig,
    h: &HamiltonianSpec,
    noise: &NoiseSpec,
) -> Result<DensityMatrix, MonteCarloError> {
    let cfg = EvolutionConfig {
        record_stride: usize::MAX,
        ..*config
    };
    let traj = evolve(&cfg, h, noise)?;
    let (_, last) = traj
        .last()
        .ok_or_else(|| MonteCarloError::Reference("evolution produced no states".into()))?;
    Ok(*last)
}
