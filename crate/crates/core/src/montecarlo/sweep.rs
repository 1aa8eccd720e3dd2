// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Deterministic one-parameter sweeps.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{final_state, reference_state, MonteCarloError, Reference};
use crate::dynamics::{EvolutionConfig, HamiltonianSpec, NoiseSpec};
use crate::metrics::{metric_report, MetricReport};
use crate::qcore::MeasurementBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    DeltaOmega,
    CouplingJ,
    T1,
    T2,
    Gamma,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::DeltaOmega => "delta_omega",
            SweepParameter::CouplingJ => "coupling_j",
            SweepParameter::T1 => "t1",
            SweepParameter::T2 => "t2",
            SweepParameter::Gamma => "gamma",
        }
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            SweepParameter::DeltaOmega,
            SweepParameter::CouplingJ,
            SweepParameter::T1,
            SweepParameter::T2,
            SweepParameter::Gamma,
        ]
        .into_iter()
        .find(|p| p.name() == s)
        .ok_or_else(|| format!("unknown sweep parameter '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepScale {
    #[default]
    Linear,
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub scale: SweepScale,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), MonteCarloError> {
        if !(self.from.is_finite() && self.to.is_finite()) {
            return Err(MonteCarloError::InvalidSpec("sweep bounds must be finite".into()));
        }
        if !(self.from < self.to) {
            return Err(MonteCarloError::InvalidSpec(format!(
                "sweep needs from < to (got {} .. {})",
                self.from, self.to
            )));
        }
        if self.steps < 2 {
            return Err(MonteCarloError::InvalidSpec(format!(
                "sweep needs at least 2 steps (got {})",
                self.steps
            )));
        }
        if self.scale == SweepScale::Log && !(self.from > 0.0) {
            return Err(MonteCarloError::InvalidSpec(format!(
                "log sweep needs from > 0 (got {})",
                self.from
            )));
        }
        Ok(())
    }

    /// Grid points in increasing order; the end points are exact.
    ///
    /// Linear: `from + k·(to − from)/(steps − 1)`. Log: `10^(log10 from +
    /// k·(log10 to − log10 from)/(steps − 1))`.
    pub fn grid(&self) -> Result<Vec<f64>, MonteCarloError> {
        self.validate()?;
        let last = self.steps - 1;
        let frac = |k: usize| k as f64 / last as f64;
        Ok((0..self.steps)
            .map(|k| match k {
                0 => self.from,
                k if k == last => self.to,
                k => match self.scale {
                    SweepScale::Linear => self.from + frac(k) * (self.to - self.from),
                    SweepScale::Log => {
                        let (a, b) = (self.from.log10(), self.to.log10());
                        10f64.powf(a + frac(k) * (b - a))
                    }
                },
            })
            .collect())
    }
}

/// Writes `value` into the swept field.
///
/// Sweeping `t1` or `t2` drops any gamma override, since the swept time
/// would otherwise have no effect. Sweeping `gamma` sets the override.
pub fn apply_parameter(
    parameter: SweepParameter,
    value: f64,
    h: &HamiltonianSpec,
    noise: &NoiseSpec,
) -> (HamiltonianSpec, NoiseSpec) {
    let (mut h, mut noise) = (*h, *noise);
    match parameter {
        SweepParameter::DeltaOmega => h.delta_omega = value,
        SweepParameter::CouplingJ => h.coupling_j = value,
        SweepParameter::T1 => {
            noise.t1 = value;
            noise.gamma_override = None;
        }
        SweepParameter::T2 => {
            noise.t2 = value;
            noise.gamma_override = None;
        }
        SweepParameter::Gamma => noise.gamma_override = Some(value),
    }
    (h, noise)
}

/// Result at one grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    pub outcome: Result<MetricReport, MonteCarloError>,
}

/// Evolves once per grid point and compares the final state with the
/// reference evaluated at the same parameters.
///
/// Failures at a point (stability guard, invalid parameter) are recorded in
/// that point's outcome; only an invalid sweep aborts.
pub fn parameter_sweep(
    config: &EvolutionConfig,
    h: &HamiltonianSpec,
    noise: &NoiseSpec,
    sweep: &SweepSpec,
    reference: &Reference,
    basis: MeasurementBasis,
) -> Result<Vec<SweepPoint>, MonteCarloError> {
    let grid = sweep.grid()?;
    Ok(grid
        .into_par_iter()
        .map(|value| {
            let (h_v, noise_v) = apply_parameter(sweep.parameter, value, h, noise);
            let outcome = (|| {
                noise_v.validate()?;
                let last = final_state(config, &h_v, &noise_v)?;
                let target = reference_state(reference, config, &h_v, &noise_v)?;
                Ok(metric_report(&last, &target, basis)?)
            })();
            SweepPoint { value, outcome }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(from: f64, to: f64, steps: usize, scale: SweepScale) -> SweepSpec {
        SweepSpec {
            parameter: SweepParameter::T1,
            from,
            to,
            steps,
            scale,
        }
    }

    #[test]
    fn log_grid() {
        let g = spec(1e-3, 1e3, 7, SweepScale::Log).grid().unwrap();
        let want = [1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3];
        assert_eq!(g.len(), 7);
        for (a, b) in g.iter().zip(want) {
            assert!((a / b - 1.0).abs() < 1e-14, "{a} vs {b}");
        }
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[6], 1e3);
    }

    #[test]
    fn linear_grid() {
        let g = spec(0.0, 1.0, 5, SweepScale::Linear).grid().unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn invalid_sweeps() {
        assert!(spec(0.0, 0.0, 3, SweepScale::Linear).validate().is_err());
        assert!(spec(1.0, 0.0, 3, SweepScale::Linear).validate().is_err());
        assert!(spec(0.0, 1.0, 1, SweepScale::Linear).validate().is_err());
        assert!(spec(0.0, 1.0, 3, SweepScale::Log).validate().is_err());
    }

    #[test]
    fn parameter_names() {
        for name in ["delta_omega", "coupling_j", "t1", "t2", "gamma"] {
            assert_eq!(name.parse::<SweepParameter>().unwrap().name(), name);
        }
        assert!("omega".parse::<SweepParameter>().is_err());
    }
}
