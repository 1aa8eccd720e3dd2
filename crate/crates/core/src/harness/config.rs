// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration documents and state specifications.
//!
//! A run config is one flat JSON object whose field names mirror
//! [`EvolutionConfig`], [`HamiltonianSpec`] and [`NoiseSpec`]:
//!
//! ```json
//! {
//!   "dt": 1e-3, "t_end": 1.0, "record_stride": 1, "master_mode": "commutator",
//!   "initial_state": "excited",
//!   "delta_omega": 6.283185307179586, "coupling_j": 0.0, "coupling_model": "none",
//!   "t1": 50e-6, "t2": 70e-6, "gamma_override": null, "rho_eq": "ground",
//!   "metadata": { "scenario": "idle qubit" }
//! }
//! ```
//!
//! Only `dt`, `t_end` and `initial_state` are required; `t1`/`t2` default to
//! 1 and everything else to the neutral value.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::HarnessError;
use crate::dynamics::{CouplingModel, EvolutionConfig, HamiltonianSpec, MasterMode, NoiseSpec};
use crate::qcore::{bloch_to_density, BlochVector, CMatrix, DensityMatrix, NORM_TOL};

/// A density matrix written by name, Bloch vector, amplitudes or entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateSpec {
    /// `|0…0⟩⟨0…0|`
    Ground,
    /// `|1…1⟩⟨1…1|`
    Excited,
    /// `I / dim`
    MaximallyMixed,
    /// Single-qubit Bloch vector `[x, y, z]`.
    Bloch([f64; 3]),
    /// Normalized amplitudes as `[re, im]` pairs (2 or 4 of them).
    Pure(Vec<[f64; 2]>),
    /// Row-major entries as `[re, im]` pairs.
    Matrix(Vec<Vec<[f64; 2]>>),
}

impl StateSpec {
    pub fn build(&self, dim: usize) -> Result<DensityMatrix, HarnessError> {
        let rho = match self {
            StateSpec::Ground => DensityMatrix::ground(dim)?,
            StateSpec::Excited => DensityMatrix::excited(dim)?,
            StateSpec::MaximallyMixed => DensityMatrix::maximally_mixed(dim)?,
            StateSpec::Bloch([x, y, z]) => bloch_to_density(&BlochVector::new(*x, *y, *z))?,
            StateSpec::Pure(amps) => {
                let psi: Vec<Complex64> = amps.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
                let norm_sqr: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
                if (norm_sqr - 1.0).abs() > NORM_TOL {
                    return Err(HarnessError::InvalidConfig(format!(
                        "pure state amplitudes have squared norm {norm_sqr}"
                    )));
                }
                let m = CMatrix::from_rows(
                    &psi.iter().map(|a| psi.iter().map(|b| a * b.conj()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                )?;
                DensityMatrix::new(m)?
            }
            StateSpec::Matrix(rows) => {
                let rows: Vec<Vec<Complex64>> = rows
                    .iter()
                    .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                    .collect();
                DensityMatrix::new(CMatrix::from_rows(&rows)?)?
            }
        };
        if rho.dim() != dim {
            return Err(HarnessError::InvalidConfig(format!(
                "state has dimension {}, configuration needs {dim}",
                rho.dim()
            )));
        }
        Ok(rho)
    }

    /// Exact entries of a state.
    pub fn from_state(rho: &DensityMatrix) -> Self {
        StateSpec::Matrix(
            rho.matrix()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        )
    }
}

fn default_time() -> f64 {
    1.0
}

fn default_stride() -> usize {
    1
}

fn default_rho_eq() -> StateSpec {
    StateSpec::Ground
}

/// Inputs of one evolution, as read from a JSON config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "default_stride")]
    pub record_stride: usize,
    #[serde(default)]
    pub master_mode: MasterMode,
    pub initial_state: StateSpec,
    #[serde(default)]
    pub delta_omega: f64,
    #[serde(default)]
    pub coupling_j: f64,
    #[serde(default)]
    pub coupling_model: CouplingModel,
    #[serde(default = "default_time")]
    pub t1: f64,
    #[serde(default = "default_time")]
    pub t2: f64,
    #[serde(default)]
    pub gamma_override: Option<f64>,
    #[serde(default = "default_rho_eq")]
    pub rho_eq: StateSpec,
    /// Copied into the metadata of traces written from this config.
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn from_json(bytes: &[u8]) -> Result<Self, HarnessError> {
        serde_json::from_slice(bytes).map_err(|e| HarnessError::InvalidConfig(e.to_string()))
    }

    /// Builds and validates the three library inputs.
    pub fn to_parts(&self) -> Result<(EvolutionConfig, HamiltonianSpec, NoiseSpec), HarnessError> {
        let h = HamiltonianSpec {
            delta_omega: self.delta_omega,
            coupling_j: self.coupling_j,
            coupling_model: self.coupling_model,
        };
        h.validate()?;
        let dim = h.dim();
        let noise = NoiseSpec {
            t1: self.t1,
            t2: self.t2,
            gamma_override: self.gamma_override,
            rho_eq: self.rho_eq.build(dim)?,
        };
        noise.validate()?;
        let config = EvolutionConfig {
            dt: self.dt,
            t_end: self.t_end,
            record_stride: self.record_stride,
            master_mode: self.master_mode,
            initial_state: self.initial_state.build(dim)?,
        };
        config.validate()?;
        Ok((config, h, noise))
    }

    /// Canonical JSON value (sorted keys) of the config.
    pub fn canonical_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("run configs always serialize")
    }

    /// SHA-256 of the canonical JSON, hex encoded.
    pub fn config_hash(&self) -> String {
        sha256_hex(canonical_json(&self.canonical_value()).as_bytes())
    }
}

/// Compact JSON with keys sorted (serde_json's default map is ordered).
pub fn canonical_json(value: &serde_json::Value) -> String {
    serde_json::to_string(value).expect("values always serialize")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
