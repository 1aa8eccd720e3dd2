// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Thresholds, verdicts and closed-form reference trajectories.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::config::{canonical_json, sha256_hex, RunConfig, StateSpec};
use super::trace::{fmt_float, save_trace};
use super::HarnessError;
use crate::dynamics::{
    closed_form_precession, closed_form_relaxation, Trajectory,
};
use crate::metrics::{trajectory_report, MetricKind, TrajectoryReport};
use crate::montecarlo::OracleKind;
use crate::qcore::{bloch_to_density, density_to_bloch, DensityMatrix, MeasurementBasis};

/// Version string recorded in provenance.
pub const TOOL_VERSION: &str = concat!("qnv ", env!("CARGO_PKG_VERSION"));

/// Per-metric limits: a maximum, or a minimum for fidelity and the
/// Bhattacharyya coefficient. Unset metrics are informational.
///
/// JSON form is a flat object keyed by metric name, e.g.
/// `{"euclidean": 1e-6, "fidelity": 0.999}`; `null` leaves a metric unset.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ThresholdSpec(BTreeMap<MetricKind, f64>);

impl ThresholdSpec {
    pub fn new(limits: impl IntoIterator<Item = (MetricKind, f64)>) -> Result<Self, HarnessError> {
        let mut spec = Self::default();
        for (kind, value) in limits {
            spec.set(kind, value)?;
        }
        Ok(spec)
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self, HarnessError> {
        let raw: BTreeMap<String, Option<f64>> = serde_json::from_slice(bytes)
            .map_err(|e| HarnessError::InvalidThreshold(e.to_string()))?;
        let mut spec = Self::default();
        for (name, value) in raw {
            let kind: MetricKind = name.parse().map_err(HarnessError::InvalidThreshold)?;
            if let Some(v) = value {
                spec.set(kind, v)?;
            }
        }
        Ok(spec)
    }

    /// Sets one limit; it must be finite and within the metric's range.
    pub fn set(&mut self, kind: MetricKind, value: f64) -> Result<(), HarnessError> {
        let (lo, hi) = kind.range();
        if !(value.is_finite() && value >= lo && value <= hi) {
            return Err(HarnessError::InvalidThreshold(format!(
                "{kind} threshold {value} outside [{lo}, {hi}]"
            )));
        }
        self.0.insert(kind, value);
        Ok(())
    }

    pub fn get(&self, kind: MetricKind) -> Option<f64> {
        self.0.get(&kind).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_value(&self) -> Value {
        Value::Object(self.0.iter().map(|(k, v)| (k.name().to_string(), json!(v))).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricStatus {
    Pass,
    Fail,
    /// No threshold set.
    Informational,
    /// The metric has no value (no Bloch direction); never fails.
    Undefined,
}

impl MetricStatus {
    pub fn name(self) -> &'static str {
        match self {
            MetricStatus::Pass => "pass",
            MetricStatus::Fail => "fail",
            MetricStatus::Informational => "informational",
            MetricStatus::Undefined => "undefined",
        }
    }
}

/// Compares a worst-case value with a limit.
pub fn judge(kind: MetricKind, value: Option<f64>, threshold: Option<f64>) -> MetricStatus {
    let Some(value) = value else {
        return MetricStatus::Undefined;
    };
    let Some(limit) = threshold else {
        return MetricStatus::Informational;
    };
    let ok = if kind.higher_is_better() {
        value >= limit
    } else {
        value <= limit
    };
    if ok {
        MetricStatus::Pass
    } else {
        MetricStatus::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricVerdict {
    pub kind: MetricKind,
    /// Worst value over all steps.
    pub value: Option<f64>,
    pub threshold: Option<f64>,
    pub status: MetricStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// SHA-256 over the canonical JSON of all validation inputs.
    pub config_hash: String,
    pub master_seed: Option<u64>,
    pub tool_version: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationVerdict {
    pub overall: Overall,
    pub per_metric: Vec<MetricVerdict>,
    pub basis: MeasurementBasis,
    pub steps: usize,
    pub provenance: Provenance,
    /// Full comparison the verdict was derived from.
    pub report: TrajectoryReport,
}

/// Validates `sim` against `reference` with an empty provenance context.
pub fn validate(
    reference: &Trajectory,
    sim: &Trajectory,
    thresholds: &ThresholdSpec,
    basis: MeasurementBasis,
) -> Result<ValidationVerdict, HarnessError> {
    validate_with_context(reference, sim, thresholds, basis, &Value::Null, None)
}

/// Applies `thresholds` to the worst step of `trajectory_report(sim, reference)`.
///
/// The provenance hash covers both trajectories (via their canonical trace
/// bytes), the thresholds, the basis, `context` (e.g. the run config) and
/// `master_seed`.
pub fn validate_with_context(
    reference: &Trajectory,
    sim: &Trajectory,
    thresholds: &ThresholdSpec,
    basis: MeasurementBasis,
    context: &Value,
    master_seed: Option<u64>,
) -> Result<ValidationVerdict, HarnessError> {
    let report = trajectory_report(sim, reference, basis)?;
    let per_metric: Vec<MetricVerdict> = MetricKind::ALL
        .into_iter()
        .map(|kind| {
            let value = report.worst.get(kind);
            let threshold = thresholds.get(kind);
            MetricVerdict {
                kind,
                value,
                threshold,
                status: judge(kind, value, threshold),
            }
        })
        .collect();
    let overall = if per_metric.iter().any(|m| m.status == MetricStatus::Fail) {
        Overall::Fail
    } else {
        Overall::Pass
    };
    let empty = BTreeMap::new();
    let inputs = json!({
        "basis": basis.to_string(),
        "context": context,
        "master_seed": master_seed,
        "reference_sha256": sha256_hex(&save_trace(reference, &empty)?),
        "sim_sha256": sha256_hex(&save_trace(sim, &empty)?),
        "thresholds": thresholds.to_value(),
    });
    Ok(ValidationVerdict {
        overall,
        per_metric,
        basis,
        steps: report.per_step.len(),
        provenance: Provenance {
            config_hash: sha256_hex(canonical_json(&inputs).as_bytes()),
            master_seed,
            tool_version: TOOL_VERSION.to_string(),
        },
        report,
    })
}

const META_DELTA_OMEGA: &str = "qnv.delta_omega";
const META_GAMMA: &str = "qnv.gamma";
const META_RHO_EQ: &str = "qnv.rho_eq";
const META_INITIAL_STATE: &str = "qnv.initial_state";

/// Parameters of the closed-form references.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleParams {
    pub delta_omega: f64,
    pub gamma: f64,
    pub rho_eq: DensityMatrix,
    /// Falls back to the first simulated state when absent.
    pub initial_state: Option<DensityMatrix>,
}

impl OracleParams {
    pub fn from_run_config(cfg: &RunConfig) -> Result<Self, HarnessError> {
        let (config, h, noise) = cfg.to_parts()?;
        Ok(Self {
            delta_omega: h.delta_omega,
            gamma: noise.gamma()?,
            rho_eq: noise.rho_eq,
            initial_state: Some(config.initial_state),
        })
    }

    /// Reads the `qnv.*` keys that `qnv evolve` writes into trace metadata.
    pub fn from_metadata(meta: &BTreeMap<String, String>) -> Result<Self, HarnessError> {
        let number = |key: &str| -> Result<f64, HarnessError> {
            let raw = meta.get(key).ok_or_else(|| {
                HarnessError::InvalidConfig(format!("trace metadata lacks '{key}'; pass --config"))
            })?;
            raw.parse()
                .map_err(|_| HarnessError::InvalidConfig(format!("metadata '{key}' is not a number: {raw}")))
        };
        let state = |key: &str| -> Result<Option<DensityMatrix>, HarnessError> {
            let Some(raw) = meta.get(key) else {
                return Ok(None);
            };
            let spec: StateSpec = serde_json::from_str(raw)
                .map_err(|e| HarnessError::InvalidConfig(format!("metadata '{key}': {e}")))?;
            let dim = match &spec {
                StateSpec::Matrix(rows) => rows.len(),
                StateSpec::Pure(amps) => amps.len(),
                _ => 2,
            };
            spec.build(dim).map(Some)
        };
        let initial_state = state(META_INITIAL_STATE)?;
        let rho_eq = match state(META_RHO_EQ)? {
            Some(s) => s,
            None => DensityMatrix::ground(initial_state.map_or(2, |s| s.dim()))?,
        };
        Ok(Self {
            delta_omega: number(META_DELTA_OMEGA)?,
            gamma: number(META_GAMMA)?,
            rho_eq,
            initial_state,
        })
    }

    /// Records the parameters under the `qnv.*` keys.
    pub fn write_metadata(&self, meta: &mut BTreeMap<String, String>) {
        let state_json = |s: &DensityMatrix| {
            serde_json::to_string(&StateSpec::from_state(s)).expect("states always serialize")
        };
        meta.insert(META_DELTA_OMEGA.into(), fmt_float(self.delta_omega));
        meta.insert(META_GAMMA.into(), fmt_float(self.gamma));
        meta.insert(META_RHO_EQ.into(), state_json(&self.rho_eq));
        if let Some(s) = &self.initial_state {
            meta.insert(META_INITIAL_STATE.into(), state_json(s));
        }
    }
}

/// Oracle solution on the time grid of `sim`, with elapsed time measured
/// from `sim`'s first time.
pub fn oracle_trajectory(
    kind: OracleKind,
    params: &OracleParams,
    sim: &Trajectory,
) -> Result<Trajectory, HarnessError> {
    let (t0, first) = match (sim.times().first(), sim.states().first()) {
        (Some(&t), Some(s)) => (t, *s),
        _ => return Err(HarnessError::EmptyTrajectory),
    };
    let rho0 = params.initial_state.unwrap_or(first);
    let states = sim
        .times()
        .iter()
        .map(|&t| -> Result<DensityMatrix, HarnessError> {
            let elapsed = t - t0;
            Ok(match kind {
                OracleKind::Relaxation => {
                    closed_form_relaxation(&rho0, &params.rho_eq, params.gamma, elapsed)?
                }
                OracleKind::Precession => {
                    let r0 = density_to_bloch(&rho0)?;
                    bloch_to_density(&closed_form_precession(&r0, params.delta_omega, elapsed))?
                }
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Trajectory::new(sim.times().to_vec(), states, 0.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn traj(states: Vec<DensityMatrix>) -> Trajectory {
        let times = (0..states.len()).map(|k| k as f64).collect();
        Trajectory::new(times, states, 1.0).unwrap()
    }

    #[test]
    fn self_validation_passes() {
        let g = DensityMatrix::ground(2).unwrap();
        let m = DensityMatrix::maximally_mixed(2).unwrap();
        let t = traj(vec![g, m]);
        let strict = ThresholdSpec::new([(MetricKind::Euclidean, 0.0), (MetricKind::Fidelity, 1.0)]).unwrap();
        let v = validate(&t, &t, &strict, MeasurementBasis::Computational).unwrap();
        assert_eq!(v.overall, Overall::Pass);
        let angle = v.per_metric.iter().find(|m| m.kind == MetricKind::BlochAngle).unwrap();
        assert_eq!(angle.status, MetricStatus::Informational);
    }

    #[test]
    fn one_bad_step_fails() {
        let g = DensityMatrix::ground(2).unwrap();
        let e = DensityMatrix::excited(2).unwrap();
        let thresholds = ThresholdSpec::new([(MetricKind::Euclidean, 0.1)]).unwrap();
        let v = validate(&traj(vec![g, g, g]), &traj(vec![g, e, g]), &thresholds, MeasurementBasis::Computational)
            .unwrap();
        assert_eq!(v.overall, Overall::Fail);
        let euclid = v.per_metric[0];
        assert_eq!(euclid.kind, MetricKind::Euclidean);
        assert!((euclid.value.unwrap() - SQRT_2).abs() < 1e-12);
        assert_eq!(euclid.status, MetricStatus::Fail);

        let none = validate(&traj(vec![g, g, g]), &traj(vec![g, e, g]), &ThresholdSpec::default(), MeasurementBasis::Computational)
            .unwrap();
        assert_eq!(none.overall, Overall::Pass);
        assert!(none.per_metric.iter().all(|m| m.status == MetricStatus::Informational));
    }

    #[test]
    fn judging_rules() {
        assert_eq!(judge(MetricKind::Kl, Some(f64::INFINITY), Some(1e9)), MetricStatus::Fail);
        assert_eq!(judge(MetricKind::Fidelity, Some(0.98), Some(0.99)), MetricStatus::Fail);
        assert_eq!(judge(MetricKind::Fidelity, Some(0.995), Some(0.99)), MetricStatus::Pass);
        assert_eq!(judge(MetricKind::BlochAngle, None, Some(0.1)), MetricStatus::Undefined);
    }

    #[test]
    fn threshold_parsing() {
        let t = ThresholdSpec::from_json(br#"{"euclidean": 1e-6, "fidelity": 0.999, "kl": null}"#).unwrap();
        assert_eq!(t.get(MetricKind::Euclidean), Some(1e-6));
        assert_eq!(t.get(MetricKind::Kl), None);
        assert!(ThresholdSpec::from_json(br#"{"euclid": 1}"#).is_err());
        assert!(ThresholdSpec::from_json(br#"{"fidelity": 1.5}"#).is_err());
        assert!(ThresholdSpec::from_json(br#"{"js": 0.7}"#).is_err());
        assert!(ThresholdSpec::from_json(br#"{"euclidean": -1}"#).is_err());
    }

    #[test]
    fn metadata_round_trip() {
        let params = OracleParams {
            delta_omega: 0.1 + 0.2,
            gamma: 1.0 / 3.0,
            rho_eq: DensityMatrix::ground(2).unwrap(),
            initial_state: Some(DensityMatrix::excited(2).unwrap()),
        };
        let mut meta = BTreeMap::new();
        params.write_metadata(&mut meta);
        assert_eq!(OracleParams::from_metadata(&meta).unwrap(), params);
        assert!(OracleParams::from_metadata(&BTreeMap::new()).is_err());
    }
}
