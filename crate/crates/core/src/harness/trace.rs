// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! The `qnv-trace/1` interchange format.
//!
//! ```json
//! {
//!   "schema_version": "qnv-trace/1",
//!   "metadata": { "simulator": "..." },
//!   "dt": 1.0000000000000000e-3,
//!   "times": [ 0.0000000000000000e0, ... ],
//!   "states": [ [[[re, im], [re, im]], [[re, im], [re, im]]], ... ]
//! }
//! ```
//!
//! Matrices are row-major nested arrays of `[re, im]` pairs. [`save_trace`]
//! writes keys in the order above, floats with 17 significant digits (enough
//! to restore every `f64` bit-exactly) and a trailing newline.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Deserialize;

use super::{HarnessError, InvariantKind};
use crate::dynamics::Trajectory;
use crate::qcore::{CMatrix, DensityMatrix, EIGEN_FLOOR, HERMITIAN_TOL, TRACE_TOL};

pub const SCHEMA_VERSION: &str = "qnv-trace/1";

/// Largest trace drift lenient loading repairs.
pub const LENIENT_TRACE_TOL: f64 = 1e-3;

/// Metadata key listing the state indices lenient loading renormalized.
pub const LENIENT_METADATA_KEY: &str = "qnv.lenient_renormalized";

/// How strictly [`load_trace`] enforces density-matrix invariants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LoadMode {
    /// Any violation is an error.
    #[default]
    Strict,
    /// Trace drift up to [`LENIENT_TRACE_TOL`] is divided out and the
    /// affected indices recorded under [`LENIENT_METADATA_KEY`]. Other
    /// violations are still errors.
    Lenient,
}

/// A parsed trace file.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceFile {
    pub schema_version: String,
    pub metadata: BTreeMap<String, String>,
    pub trajectory: Trajectory,
}

impl TraceFile {
    pub fn new(trajectory: Trajectory, metadata: BTreeMap<String, String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            metadata,
            trajectory,
        }
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>, HarnessError> {
        save_trace(&self.trajectory, &self.metadata)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTrace {
    schema_version: String,
    #[serde(default)]
    metadata: BTreeMap<String, String>,
    dt: f64,
    times: Vec<f64>,
    states: Vec<Vec<Vec<[f64; 2]>>>,
}

pub fn load_trace(bytes: &[u8], mode: LoadMode) -> Result<TraceFile, HarnessError> {
    let raw: RawTrace =
        serde_json::from_slice(bytes).map_err(|e| HarnessError::Malformed(e.to_string()))?;
    if raw.schema_version != SCHEMA_VERSION {
        return Err(HarnessError::UnknownSchema(raw.schema_version));
    }
    if !(raw.dt >= 0.0 && raw.dt.is_finite()) {
        return Err(HarnessError::Malformed(format!("dt must be >= 0 (got {})", raw.dt)));
    }
    if raw.times.len() != raw.states.len() {
        return Err(HarnessError::Malformed(format!(
            "{} times but {} states",
            raw.times.len(),
            raw.states.len()
        )));
    }
    if raw.states.is_empty() {
        return Err(HarnessError::EmptyTrajectory);
    }
    let mut metadata = raw.metadata;
    let mut renormalized = Vec::new();
    let mut states = Vec::with_capacity(raw.states.len());
    for (index, rows) in raw.states.iter().enumerate() {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        let m = CMatrix::from_rows(&rows)
            .map_err(|e| HarnessError::Malformed(format!("state {index}: {e}")))?;
        if m.dim() != 2 && m.dim() != 4 {
            return Err(HarnessError::Malformed(format!(
                "state {index}: dimension {} (expected 2 or 4)",
                m.dim()
            )));
        }
        let (state, fixed) = check_state(m, index, mode)?;
        if fixed {
            renormalized.push(index.to_string());
        }
        states.push(state);
    }
    if !renormalized.is_empty() {
        metadata.insert(LENIENT_METADATA_KEY.to_string(), renormalized.join(","));
    }
    let trajectory = Trajectory::new(raw.times, states, raw.dt)
        .map_err(|e| HarnessError::Malformed(e.to_string()))?;
    Ok(TraceFile {
        schema_version: raw.schema_version,
        metadata,
        trajectory,
    })
}

fn violation(index: usize, kind: InvariantKind, detail: String) -> HarnessError {
    HarnessError::Invariant {
        index,
        kind,
        detail,
    }
}

/// Checks finiteness, Hermiticity, trace and positivity, in that order.
fn check_state(
    m: CMatrix,
    index: usize,
    mode: LoadMode,
) -> Result<(DensityMatrix, bool), HarnessError> {
    if !m.is_finite() {
        return Err(violation(index, InvariantKind::NonFinite, "non-finite entry".into()));
    }
    let residual = m.hermiticity_residual();
    if residual > HERMITIAN_TOL {
        return Err(violation(
            index,
            InvariantKind::Hermiticity,
            format!("residual {residual:e}"),
        ));
    }
    let trace = m.trace().re;
    let drift = (trace - 1.0).abs();
    let mut fixed = false;
    let m = if drift <= TRACE_TOL {
        m
    } else if mode == LoadMode::Lenient && drift <= LENIENT_TRACE_TOL {
        fixed = true;
        m.scale(1.0 / trace)
    } else {
        return Err(violation(index, InvariantKind::Trace, format!("trace {trace}")));
    };
    let state = DensityMatrix::new_unchecked(m);
    let min = state
        .eigenvalues()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    if min < EIGEN_FLOOR {
        return Err(violation(
            index,
            InvariantKind::Positivity,
            format!("minimum eigenvalue {min:e}"),
        ));
    }
    Ok((state, fixed))
}

/// 17 significant digits in exponent form, e.g. `1.0000000000000000e-3`.
pub(crate) fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Canonical serialization; identical inputs give identical bytes.
pub fn save_trace(
    traj: &Trajectory,
    metadata: &BTreeMap<String, String>,
) -> Result<Vec<u8>, HarnessError> {
    if traj.is_empty() {
        return Err(HarnessError::EmptyTrajectory);
    }
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"schema_version\": {},", fmt_string(SCHEMA_VERSION));
    if metadata.is_empty() {
        out.push_str("  \"metadata\": {},\n");
    } else {
        out.push_str("  \"metadata\": {\n");
        let entries: Vec<String> = metadata
            .iter()
            .map(|(k, v)| format!("    {}: {}", fmt_string(k), fmt_string(v)))
            .collect();
        out.push_str(&entries.join(",\n"));
        out.push_str("\n  },\n");
    }
    let _ = writeln!(out, "  \"dt\": {},", fmt_float(traj.dt()));
    out.push_str("  \"times\": [\n");
    let times: Vec<String> = traj.times().iter().map(|&t| format!("    {}", fmt_float(t))).collect();
    out.push_str(&times.join(",\n"));
    out.push_str("\n  ],\n  \"states\": [\n");
    let states: Vec<String> = traj
        .states()
        .iter()
        .map(|s| format!("    {}", fmt_matrix(s.matrix())))
        .collect();
    out.push_str(&states.join(",\n"));
    out.push_str("\n  ]\n}\n");
    Ok(out.into_bytes())
}

/// Row-major `[[[re, im], ...], ...]` with 17-digit floats.
pub(crate) fn fmt_matrix(m: &CMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("[{}, {}]", fmt_float(z.re), fmt_float(z.im)))
                .collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}
