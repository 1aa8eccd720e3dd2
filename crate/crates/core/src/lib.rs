// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Analytical oracle and validation harness for quantum network simulators.
//!
//! The crate evolves one- and two-qubit density matrices under a
//! Hamiltonian-plus-relaxation master equation, compares simulator traces
//! against that reference with distance, distribution and directional
//! metrics, and quantifies agreement with seeded Monte-Carlo ensembles,
//! parameter sweeps and a two-sample Kolmogorov-Smirnov test.
//!
//! Module map:
//!
//! - [`qcore`]: small dense complex matrices, Pauli operators, pure states,
//!   density matrices and Bloch vectors.
//! - [`dynamics`]: Hamiltonians, decoherence rate, Bloch and master equation
//!   right-hand sides, the fixed-step RK4 integrator and closed-form oracles.
//! - [`metrics`]: pairwise and trajectory-wide comparison metrics.
//! - [`montecarlo`]: seeding, perturbations, ensembles, sweeps and the KS test.
//! - [`harness`]: trace files, thresholds, verdicts and report emission.

#![forbid(unsafe_code)]

pub mod dynamics;
pub mod harness;
pub mod metrics;
pub mod montecarlo;
pub mod qcore;

pub use dynamics::{
    evolve, CouplingModel, EvolutionConfig, HamiltonianSpec, MasterMode, NoiseSpec, Trajectory,
};
pub use metrics::{metric_report, trajectory_report, MetricReport, TrajectoryReport};
pub use qcore::{BlochVector, CMatrix, DensityMatrix, PauliAxis, ProbabilityDistribution};
