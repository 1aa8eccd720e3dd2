// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Trace files, run configs, threshold verdicts and reports.
//!
//! This module is the I/O boundary of the crate: the `qnv` binary is a thin
//! command-line layer over these functions.

mod config;
mod report;
mod trace;
mod validate;

use std::fmt;

use thiserror::Error;

use crate::dynamics::DynamicsError;
use crate::metrics::MetricError;
use crate::montecarlo::MonteCarloError;
use crate::qcore::QcoreError;

pub use config::{canonical_json, sha256_hex, RunConfig, StateSpec};
pub use report::{emit_report, report_csv, report_json, KsAttachment, Report, ReportFormat};
pub use trace::{
    load_trace, save_trace, LoadMode, TraceFile, LENIENT_METADATA_KEY, LENIENT_TRACE_TOL,
    SCHEMA_VERSION,
};
pub use validate::{
    judge, oracle_trajectory, validate, validate_with_context, MetricStatus, MetricVerdict,
    OracleParams, Overall, Provenance, ThresholdSpec, ValidationVerdict, TOOL_VERSION,
};

/// Which density-matrix invariant a trace state breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantKind {
    NonFinite,
    Hermiticity,
    Trace,
    Positivity,
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvariantKind::NonFinite => "finiteness",
            InvariantKind::Hermiticity => "hermiticity",
            InvariantKind::Trace => "trace",
            InvariantKind::Positivity => "positivity",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("malformed trace: {0}")]
    Malformed(String),
    #[error("unknown schema_version '{0}'")]
    UnknownSchema(String),
    #[error("{kind} violation at index {index}: {detail}")]
    Invariant {
        index: usize,
        kind: InvariantKind,
        detail: String,
    },
    #[error("trajectory has no states")]
    EmptyTrajectory,
    #[error("invalid thresholds: {0}")]
    InvalidThreshold(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    MonteCarlo(#[from] MonteCarloError),
    #[error(transparent)]
    State(#[from] QcoreError),
}
