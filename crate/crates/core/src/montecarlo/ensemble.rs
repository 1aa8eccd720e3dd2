// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Seeded ensembles of perturbed evolutions and their statistics.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::perturb::{perturb, PerturbationSpec};
use super::seed::derive_seed;
use super::{final_state, reference_state, MonteCarloError, Reference};
use crate::dynamics::{EvolutionConfig, HamiltonianSpec, NoiseSpec};
use crate::metrics::{metric_report, MetricKind, MetricReport};
use crate::qcore::{CMatrix, DensityMatrix, MeasurementBasis};

/// Two-sided 95% normal quantile used for confidence half-widths.
pub const Z_95: f64 = 1.96;

/// How runs are scheduled. Results are identical either way.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Size, seed and perturbation model of an ensemble.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleSpec {
    pub n_runs: usize,
    pub master_seed: u64,
    pub perturbation: PerturbationSpec,
    pub basis: MeasurementBasis,
    pub execution: Execution,
}

impl EnsembleSpec {
    /// Parallel execution, computational basis.
    pub fn new(n_runs: usize, master_seed: u64, perturbation: PerturbationSpec) -> Self {
        Self {
            n_runs,
            master_seed,
            perturbation,
            basis: MeasurementBasis::Computational,
            execution: Execution::Parallel,
        }
    }
}

/// Sample statistics of one metric over the runs where it is defined.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub mean: f64,
    /// Sample standard deviation (n − 1 denominator).
    pub std: f64,
    /// `1.96·std/√n`.
    pub ci95_half_width: f64,
    /// Number of runs contributing.
    pub n_defined: usize,
}

/// Mean, spread and confidence of metrics over an ensemble.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleStatistics {
    pub n_runs: usize,
    pub master_seed: u64,
    /// `None` when fewer than two runs define the metric.
    pub summaries: BTreeMap<MetricKind, Option<MetricSummary>>,
    /// Entrywise mean of the final states, renormalized to unit trace.
    pub final_state_mean: DensityMatrix,
    /// Final-state metric report of every run, in run-index order.
    pub reports: Vec<MetricReport>,
    /// Final state of every run, in run-index order.
    pub final_states: Vec<DensityMatrix>,
}

impl EnsembleStatistics {
    pub fn summary(&self, kind: MetricKind) -> Option<&MetricSummary> {
        self.summaries.get(&kind).and_then(Option::as_ref)
    }

    /// Defined values of one metric, in run-index order.
    pub fn samples(&self, kind: MetricKind) -> Vec<f64> {
        self.reports.iter().filter_map(|r| r.get(kind)).collect()
    }
}

/// Summary statistics of `values`; `None` for fewer than two values.
///
/// Computed as a two-pass sum shifted by the first value, so identical
/// samples give exactly that value as mean and exactly zero spread. Samples
/// containing `+∞` have mean `+∞`, and std `0` if all samples are equal,
/// otherwise `+∞`.
pub fn summarize(values: &[f64]) -> Option<MetricSummary> {
    let n = values.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let shift = values[0];
    if values.iter().any(|v| v.is_infinite()) {
        let all_equal = values.iter().all(|&v| v == shift);
        let spread = if all_equal { 0.0 } else { f64::INFINITY };
        return Some(MetricSummary {
            mean: if all_equal { shift } else { values.iter().sum() },
            std: spread,
            ci95_half_width: spread,
            n_defined: n,
        });
    }
    let mean_d = values.iter().map(|v| v - shift).sum::<f64>() / nf;
    let ss: f64 = values.iter().map(|v| (v - shift - mean_d).powi(2)).sum();
    let std = (ss / (nf - 1.0)).sqrt();
    Some(MetricSummary {
        mean: shift + mean_d,
        std,
        ci95_half_width: Z_95 * std / nf.sqrt(),
        n_defined: n,
    })
}

/// Runs `n_runs` perturbed evolutions and compares each final state with
/// the reference.
///
/// Run `k` draws its perturbation from `derive_seed(master_seed, k)`. The
/// reference is evaluated once with the nominal (unperturbed) inputs.
/// Aggregation walks runs in index order, so parallel and sequential
/// execution give bit-identical statistics.
pub fn run_ensemble(
    config: &EvolutionConfig,
    h: &HamiltonianSpec,
    noise: &NoiseSpec,
    reference: &Reference,
    spec: &EnsembleSpec,
) -> Result<EnsembleStatistics, MonteCarloError> {
    if spec.n_runs < 2 {
        return Err(MonteCarloError::InvalidSpec(format!(
            "n_runs must be >= 2 (got {})",
            spec.n_runs
        )));
    }
    spec.perturbation.validate()?;
    config.validate()?;
    let ref_state = reference_state(reference, config, h, noise)?;

    let one_run = |index: usize| -> Result<(MetricReport, DensityMatrix), MonteCarloError> {
        let run = || {
            let seed = derive_seed(spec.master_seed, index as u64);
            let (h_k, noise_k, rho_k) =
                perturb(h, noise, &config.initial_state, &spec.perturbation, seed)?;
            let cfg = EvolutionConfig {
                initial_state: rho_k,
                ..*config
            };
            let last = final_state(&cfg, &h_k, &noise_k)?;
            Ok((metric_report(&last, &ref_state, spec.basis)?, last))
        };
        run().map_err(|e: MonteCarloError| MonteCarloError::RunFailed {
            index,
            source: Box::new(e),
        })
    };
    let results: Vec<_> = match spec.execution {
        Execution::Parallel => (0..spec.n_runs).into_par_iter().map(one_run).collect(),
        Execution::Sequential => (0..spec.n_runs).map(one_run).collect(),
    };
    let (reports, final_states): (Vec<_>, Vec<_>) =
        results.into_iter().collect::<Result<Vec<_>, _>>()?.into_iter().unzip();

    let summaries = MetricKind::ALL
        .into_iter()
        .map(|kind| {
            let values: Vec<f64> = reports.iter().filter_map(|r| r.get(kind)).collect();
            (kind, summarize(&values))
        })
        .collect();

    Ok(EnsembleStatistics {
        n_runs: spec.n_runs,
        master_seed: spec.master_seed,
        summaries,
        final_state_mean: mean_state(&final_states)?,
        reports,
        final_states,
    })
}

fn mean_state(states: &[DensityMatrix]) -> Result<DensityMatrix, MonteCarloError> {
    let dim = states[0].dim();
    let mut sum = CMatrix::zeros(dim);
    for s in states {
        sum += *s.matrix();
    }
    let sum = (sum + sum.dagger()).scale(0.5);
    Ok(DensityMatrix::new(sum.scale(1.0 / sum.trace().re))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summarize_identical_values() {
        let s = summarize(&[0.1, 0.1, 0.1]).unwrap();
        assert_eq!(s.mean, 0.1);
        assert_eq!(s.std, 0.0);
        assert_eq!(s.ci95_half_width, 0.0);
    }

    #[test]
    fn summarize_known_values() {
        let s = summarize(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(s.mean, 2.5);
        let std = (5.0f64 / 3.0).sqrt();
        assert!((s.std - std).abs() < 1e-15);
        assert!((s.ci95_half_width - 1.96 * std / 2.0).abs() < 1e-15);
    }

    #[test]
    fn summarize_infinities() {
        let inf = f64::INFINITY;
        let same = summarize(&[inf, inf]).unwrap();
        assert_eq!((same.mean, same.std), (inf, 0.0));
        let mixed = summarize(&[inf, 1.0]).unwrap();
        assert_eq!((mixed.mean, mixed.std), (inf, inf));
        assert!(summarize(&[1.0]).is_none());
    }
}
