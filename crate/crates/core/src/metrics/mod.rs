// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Comparison metrics between a simulated state and a reference state.
//!
//! Three families are combined into one [`MetricReport`]:
//!
//! - distances on the flattened matrices (Euclidean, Manhattan, RMSD) plus
//!   Uhlmann fidelity;
//! - divergences between outcome distributions (KL, Jensen-Shannon,
//!   Bhattacharyya, earth mover's), read off each state in a chosen
//!   [`MeasurementBasis`];
//! - directional comparisons of single-qubit Bloch vectors (angle and the
//!   Frobenius size of the aligning rotation). These are undefined for
//!   two-qubit states and for the maximally mixed state, and are reported as
//!   `None` rather than NaN.

mod directional;
mod distance;
mod divergence;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::Trajectory;
use crate::qcore::{density_to_bloch, measurement_distribution, DensityMatrix, MeasurementBasis, QcoreError};

pub use directional::{bloch_angle, minimal_rotation, rotation_frobenius, MIN_DIRECTION_NORM};
pub use distance::{euclidean_distance, fidelity, manhattan_distance, rmsd, uhlmann_fidelity};
pub use divergence::{bhattacharyya, earth_movers, js_divergence, kl_divergence, Bhattacharyya};

/// Largest allowed pointwise difference between two time grids.
pub const TIME_GRID_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("distribution length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("undefined direction (zero Bloch vector)")]
    UndefinedDirection,
    #[error("negative determinant {0:e}")]
    NegativeDeterminant(f64),
    #[error("trajectory length mismatch: {left} vs {right}")]
    TrajectoryLengthMismatch { left: usize, right: usize },
    #[error("time grids differ at index {index}: {left} vs {right}")]
    TimeGridMismatch { index: usize, left: f64, right: f64 },
    #[error("empty trajectory")]
    EmptyTrajectory,
    #[error(transparent)]
    State(#[from] QcoreError),
}

/// Identifies one field of a [`MetricReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    Euclidean,
    Manhattan,
    Rmsd,
    Fidelity,
    Kl,
    Js,
    BhattacharyyaCoeff,
    BhattacharyyaDist,
    EarthMovers,
    BlochAngle,
    RotationFrobenius,
}

impl MetricKind {
    pub const ALL: [MetricKind; 11] = [
        MetricKind::Euclidean,
        MetricKind::Manhattan,
        MetricKind::Rmsd,
        MetricKind::Fidelity,
        MetricKind::Kl,
        MetricKind::Js,
        MetricKind::BhattacharyyaCoeff,
        MetricKind::BhattacharyyaDist,
        MetricKind::EarthMovers,
        MetricKind::BlochAngle,
        MetricKind::RotationFrobenius,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Euclidean => "euclidean",
            MetricKind::Manhattan => "manhattan",
            MetricKind::Rmsd => "rmsd",
            MetricKind::Fidelity => "fidelity",
            MetricKind::Kl => "kl",
            MetricKind::Js => "js",
            MetricKind::BhattacharyyaCoeff => "bhattacharyya_coeff",
            MetricKind::BhattacharyyaDist => "bhattacharyya_dist",
            MetricKind::EarthMovers => "earth_movers",
            MetricKind::BlochAngle => "bloch_angle",
            MetricKind::RotationFrobenius => "rotation_frobenius",
        }
    }

    /// Similarity measures, where larger means closer.
    pub fn higher_is_better(self) -> bool {
        matches!(self, MetricKind::Fidelity | MetricKind::BhattacharyyaCoeff)
    }

    /// Closed range of attainable values.
    pub fn range(self) -> (f64, f64) {
        use std::f64::consts::{LN_2, PI, SQRT_2};
        match self {
            MetricKind::Fidelity | MetricKind::BhattacharyyaCoeff => (0.0, 1.0),
            MetricKind::Js => (0.0, LN_2),
            MetricKind::BlochAngle => (0.0, PI),
            MetricKind::RotationFrobenius => (0.0, 2.0 * SQRT_2),
            _ => (0.0, f64::INFINITY),
        }
    }

    pub fn is_directional(self) -> bool {
        matches!(self, MetricKind::BlochAngle | MetricKind::RotationFrobenius)
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        MetricKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown metric '{s}'"))
    }
}

/// All metrics for one pair of states.
///
/// `kl` and `bhattacharyya_dist` may be `+∞`. Directional fields are `None`
/// when a direction is undefined.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricReport {
    pub euclidean: f64,
    pub manhattan: f64,
    pub rmsd: f64,
    pub fidelity: f64,
    pub kl: f64,
    pub js: f64,
    pub bhattacharyya_coeff: f64,
    pub bhattacharyya_dist: f64,
    pub earth_movers: f64,
    pub bloch_angle: Option<f64>,
    pub rotation_frobenius: Option<f64>,
}

impl MetricReport {
    /// Value of one metric; `None` means undefined.
    pub fn get(&self, kind: MetricKind) -> Option<f64> {
        match kind {
            MetricKind::Euclidean => Some(self.euclidean),
            MetricKind::Manhattan => Some(self.manhattan),
            MetricKind::Rmsd => Some(self.rmsd),
            MetricKind::Fidelity => Some(self.fidelity),
            MetricKind::Kl => Some(self.kl),
            MetricKind::Js => Some(self.js),
            MetricKind::BhattacharyyaCoeff => Some(self.bhattacharyya_coeff),
            MetricKind::BhattacharyyaDist => Some(self.bhattacharyya_dist),
            MetricKind::EarthMovers => Some(self.earth_movers),
            MetricKind::BlochAngle => self.bloch_angle,
            MetricKind::RotationFrobenius => self.rotation_frobenius,
        }
    }

    /// Builds a report field by field. Non-directional fields left `None`
    /// become NaN.
    pub fn from_fn(mut f: impl FnMut(MetricKind) -> Option<f64>) -> Self {
        let mut scalar = |k| f(k).unwrap_or(f64::NAN);
        let euclidean = scalar(MetricKind::Euclidean);
        let manhattan = scalar(MetricKind::Manhattan);
        let rmsd = scalar(MetricKind::Rmsd);
        let fidelity = scalar(MetricKind::Fidelity);
        let kl = scalar(MetricKind::Kl);
        let js = scalar(MetricKind::Js);
        let bhattacharyya_coeff = scalar(MetricKind::BhattacharyyaCoeff);
        let bhattacharyya_dist = scalar(MetricKind::BhattacharyyaDist);
        let earth_movers = scalar(MetricKind::EarthMovers);
        Self {
            euclidean,
            manhattan,
            rmsd,
            fidelity,
            kl,
            js,
            bhattacharyya_coeff,
            bhattacharyya_dist,
            earth_movers,
            bloch_angle: f(MetricKind::BlochAngle),
            rotation_frobenius: f(MetricKind::RotationFrobenius),
        }
    }
}

fn directional_or_undefined(r: Result<f64, MetricError>) -> Result<Option<f64>, MetricError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(MetricError::UndefinedDirection) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Full metric vector comparing `sim` against `reference`.
pub fn metric_report(
    sim: &DensityMatrix,
    reference: &DensityMatrix,
    basis: MeasurementBasis,
) -> Result<MetricReport, MetricError> {
    if sim.dim() != reference.dim() {
        return Err(MetricError::DimensionMismatch {
            left: sim.dim(),
            right: reference.dim(),
        });
    }
    let p = measurement_distribution(sim, basis)?;
    let q = measurement_distribution(reference, basis)?;
    let bhatt = bhattacharyya(&p, &q)?;

    let (bloch_angle, rotation_frobenius) = if sim.dim() == 2 {
        let a = density_to_bloch(sim)?;
        let b = density_to_bloch(reference)?;
        (
            directional_or_undefined(directional::bloch_angle(&a, &b))?,
            directional_or_undefined(directional::rotation_frobenius(&a, &b))?,
        )
    } else {
        (None, None)
    };

    Ok(MetricReport {
        euclidean: euclidean_distance(sim, reference)?,
        manhattan: manhattan_distance(sim, reference)?,
        rmsd: rmsd(sim, reference)?,
        fidelity: fidelity(sim, reference)?,
        kl: kl_divergence(&p, &q)?,
        js: js_divergence(&p, &q)?,
        bhattacharyya_coeff: bhatt.coefficient,
        bhattacharyya_dist: bhatt.distance,
        earth_movers: earth_movers(&p, &q)?,
        bloch_angle,
        rotation_frobenius,
    })
}

/// Pointwise comparison of two trajectories on a shared time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryReport {
    pub times: Vec<f64>,
    pub per_step: Vec<MetricReport>,
    /// Step-wise means. Directional means skip undefined steps.
    pub aggregate: MetricReport,
    /// Step-wise maxima, or minima for similarity measures.
    pub worst: MetricReport,
}

pub fn trajectory_report(
    sim: &Trajectory,
    reference: &Trajectory,
    basis: MeasurementBasis,
) -> Result<TrajectoryReport, MetricError> {
    if sim.len() != reference.len() {
        return Err(MetricError::TrajectoryLengthMismatch {
            left: sim.len(),
            right: reference.len(),
        });
    }
    if sim.is_empty() {
        return Err(MetricError::EmptyTrajectory);
    }
    for (index, (&a, &b)) in sim.times().iter().zip(reference.times()).enumerate() {
        if (a - b).abs() > TIME_GRID_TOL {
            return Err(MetricError::TimeGridMismatch {
                index,
                left: a,
                right: b,
            });
        }
    }
    let per_step = sim
        .states()
        .iter()
        .zip(reference.states())
        .map(|(s, r)| metric_report(s, r, basis))
        .collect::<Result<Vec<_>, _>>()?;

    let aggregate = MetricReport::from_fn(|kind| {
        let values: Vec<f64> = per_step.iter().filter_map(|r| r.get(kind)).collect();
        if values.is_empty() {
            None
        } else {
            Some(values.iter().sum::<f64>() / values.len() as f64)
        }
    });
    let worst = MetricReport::from_fn(|kind| {
        let values = per_step.iter().filter_map(|r| r.get(kind));
        if kind.higher_is_better() {
            values.reduce(f64::min)
        } else {
            values.reduce(f64::max)
        }
    });

    Ok(TrajectoryReport {
        times: sim.times().to_vec(),
        per_step,
        aggregate,
        worst,
    })
}
