// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! `qnv` command-line interface.
//!
//! Exit codes: 0 success or validation pass, 1 validation fail, 2 usage,
//! parse or runtime error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qnv::dynamics::{evolve, CouplingModel, EvolutionConfig, HamiltonianSpec, NoiseSpec};
use qnv::harness::{
    emit_report, load_trace, oracle_trajectory, save_trace, validate_with_context, KsAttachment,
    LoadMode, OracleParams, Overall, Report, ReportFormat, RunConfig, ThresholdSpec, TOOL_VERSION,
};
use qnv::metrics::{trajectory_report, MetricKind};
use qnv::montecarlo::{
    ks_two_sample, parameter_sweep, run_ensemble, EnsembleSpec, EnsembleStatistics, Execution,
    OracleKind, PerturbationSpec, Reference, SweepParameter, SweepScale, SweepSpec,
};
use qnv::qcore::MeasurementBasis;

#[derive(Parser)]
#[command(name = "qnv", version, about = "Analytical oracle and validation harness for qubit simulator traces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the master-equation model and write a qnv-trace/1 file.
    Evolve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare two traces step by step.
    Compare {
        #[arg(long = "ref")]
        reference: PathBuf,
        #[arg(long)]
        sim: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
        /// Renormalize trace drift up to 1e-3 instead of rejecting it.
        #[arg(long)]
        lenient: bool,
    },
    /// Apply thresholds to the worst step of a comparison.
    Validate {
        /// A trace file, `oracle:relaxation` or `oracle:precession`.
        #[arg(long = "ref")]
        reference: String,
        #[arg(long)]
        sim: PathBuf,
        #[arg(long)]
        thresholds: PathBuf,
        /// Run config supplying oracle parameters (otherwise read from the
        /// sim trace's metadata).
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        lenient: bool,
    },
    /// Monte-Carlo ensemble of perturbed runs.
    Ensemble {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        runs: usize,
        #[arg(long)]
        seed: u64,
        /// PerturbationSpec JSON; no perturbation when omitted.
        #[arg(long)]
        perturb: Option<PathBuf>,
        #[command(flatten)]
        reference: RefArgs,
        /// Run sequentially (results are identical to parallel runs).
        #[arg(long)]
        sequential: bool,
        /// JSON array of samples to KS-test the ensemble against.
        #[arg(long)]
        ks_against: Option<PathBuf>,
        /// Ensemble quantity for the KS test: `metric:<name>` or
        /// `entry:<i>,<j>:re|im` of the final state.
        #[arg(long, default_value = "metric:euclidean", requires = "ks_against")]
        ks_sample: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the model over a grid of one parameter.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        param: SweepParameter,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Logarithmic grid.
        #[arg(long)]
        log: bool,
        #[command(flatten)]
        reference: RefArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, default_value = "computational")]
    basis: MeasurementBasis,
    #[arg(long, default_value = "json")]
    format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RefArgs {
    /// `auto`, `nominal`, `oracle:relaxation`, `oracle:precession` or a
    /// trace file. `auto` picks relaxation when the Hamiltonian vanishes,
    /// precession for a single qubit without relaxation, else nominal.
    #[arg(long = "ref", default_value = "auto")]
    reference: String,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::from(format!("{}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display()))?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn load(path: &Path, lenient: bool) -> Result<qnv::harness::TraceFile, Failure> {
    let mode = if lenient { LoadMode::Lenient } else { LoadMode::Strict };
    load_trace(&read(path)?, mode).map_err(|e| Failure::from(format!("{}: {e}", path.display())))
}

fn load_config(path: &Path) -> Result<(RunConfig, EvolutionConfig, HamiltonianSpec, NoiseSpec), Failure> {
    let cfg = RunConfig::from_json(&read(path)?)?;
    let (config, h, noise) = cfg.to_parts()?;
    Ok((cfg, config, h, noise))
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Evolve { config, out } => {
            let (cfg, config, h, noise) = load_config(&config)?;
            let traj = evolve(&config, &h, &noise)?;
            let mut meta = cfg.metadata.clone();
            meta.insert("generator".into(), TOOL_VERSION.into());
            meta.insert("qnv.config_sha256".into(), cfg.config_hash());
            OracleParams::from_run_config(&cfg)?.write_metadata(&mut meta);
            write_output(Some(&out), &save_trace(&traj, &meta)?)?;
            Ok(0)
        }
        Command::Compare {
            reference,
            sim,
            output,
            lenient,
        } => {
            let r = load(&reference, lenient)?;
            let s = load(&sim, lenient)?;
            let report = trajectory_report(&s.trajectory, &r.trajectory, output.basis)?;
            write_output(
                output.out.as_deref(),
                &emit_report(&Report::Comparison(&report), output.format),
            )?;
            Ok(0)
        }
        Command::Validate {
            reference,
            sim,
            thresholds,
            config,
            output,
            lenient,
        } => {
            let sim = load(&sim, lenient)?;
            let thresholds = ThresholdSpec::from_json(&read(&thresholds)?)?;
            let run_config = match &config {
                Some(path) => Some(RunConfig::from_json(&read(path)?)?),
                None => None,
            };
            let ref_traj = match reference.strip_prefix("oracle:") {
                Some(name) => {
                    let kind: OracleKind = name.parse()?;
                    let params = match &run_config {
                        Some(cfg) => OracleParams::from_run_config(cfg)?,
                        None => OracleParams::from_metadata(&sim.metadata)?,
                    };
                    oracle_trajectory(kind, &params, &sim.trajectory)?
                }
                None => load(Path::new(&reference), lenient)?.trajectory,
            };
            let context = serde_json::json!({
                "reference": reference,
                "run_config": run_config.as_ref().map(RunConfig::canonical_value),
            });
            let verdict = validate_with_context(
                &ref_traj,
                &sim.trajectory,
                &thresholds,
                output.basis,
                &context,
                None,
            )?;
            write_output(
                output.out.as_deref(),
                &emit_report(&Report::Verdict(&verdict), output.format),
            )?;
            Ok(match verdict.overall {
                Overall::Pass => 0,
                Overall::Fail => 1,
            })
        }
        Command::Ensemble {
            config,
            runs,
            seed,
            perturb,
            reference,
            sequential,
            ks_against,
            ks_sample,
            output,
        } => {
            let (_, config, h, noise) = load_config(&config)?;
            let perturbation: PerturbationSpec = match &perturb {
                Some(path) => serde_json::from_slice(&read(path)?)
                    .map_err(|e| format!("{}: {e}", path.display()))?,
                None => PerturbationSpec::default(),
            };
            let reference = resolve_reference(&reference.reference, &h, &noise)?;
            let spec = EnsembleSpec {
                n_runs: runs,
                master_seed: seed,
                perturbation,
                basis: output.basis,
                execution: if sequential {
                    Execution::Sequential
                } else {
                    Execution::Parallel
                },
            };
            let stats = run_ensemble(&config, &h, &noise, &reference, &spec)?;
            let ks = match &ks_against {
                Some(path) => {
                    let other: Vec<f64> = serde_json::from_slice(&read(path)?)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    let ours = ks_samples(&stats, &ks_sample)?;
                    Some(KsAttachment {
                        quantity: ks_sample.clone(),
                        result: ks_two_sample(&ours, &other)?,
                    })
                }
                None => None,
            };
            let report = Report::Ensemble {
                stats: &stats,
                ks: ks.as_ref(),
            };
            write_output(output.out.as_deref(), &emit_report(&report, output.format))?;
            Ok(0)
        }
        Command::Sweep {
            config,
            param,
            from,
            to,
            steps,
            log,
            reference,
            output,
        } => {
            let (_, config, h, noise) = load_config(&config)?;
            let reference = resolve_reference(&reference.reference, &h, &noise)?;
            let sweep = SweepSpec {
                parameter: param,
                from,
                to,
                steps,
                scale: if log { SweepScale::Log } else { SweepScale::Linear },
            };
            let points = parameter_sweep(&config, &h, &noise, &sweep, &reference, output.basis)?;
            let report = Report::Sweep {
                parameter: param,
                points: &points,
            };
            write_output(output.out.as_deref(), &emit_report(&report, output.format))?;
            Ok(0)
        }
    }
}

fn resolve_reference(
    name: &str,
    h: &HamiltonianSpec,
    noise: &NoiseSpec,
) -> Result<Reference, Failure> {
    Ok(match name {
        "auto" => {
            let no_hamiltonian = h.delta_omega == 0.0
                && (h.coupling_model == CouplingModel::None || h.coupling_j == 0.0);
            if no_hamiltonian {
                Reference::Oracle(OracleKind::Relaxation)
            } else if h.dim() == 2 && noise.gamma()? == 0.0 {
                Reference::Oracle(OracleKind::Precession)
            } else {
                Reference::Nominal
            }
        }
        "nominal" => Reference::Nominal,
        other => match other.strip_prefix("oracle:") {
            Some(kind) => Reference::Oracle(kind.parse()?),
            None => Reference::Trajectory(load(Path::new(other), false)?.trajectory),
        },
    })
}

/// Samples named by `--ks-sample`, in run order.
fn ks_samples(stats: &EnsembleStatistics, quantity: &str) -> Result<Vec<f64>, Failure> {
    if let Some(name) = quantity.strip_prefix("metric:") {
        let kind: MetricKind = name.parse()?;
        return Ok(stats.samples(kind));
    }
    let bad = || Failure::from(format!("invalid --ks-sample '{quantity}'"));
    let spec = quantity.strip_prefix("entry:").ok_or_else(bad)?;
    let (index, part) = spec.split_once(':').ok_or_else(bad)?;
    let (i, j) = index.split_once(',').ok_or_else(bad)?;
    let (i, j): (usize, usize) = (i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?);
    let dim = stats.final_state_mean.dim();
    if i >= dim || j >= dim {
        return Err(bad());
    }
    let pick = match part {
        "re" => |z: num_complex::Complex64| z.re,
        "im" => |z: num_complex::Complex64| z.im,
        _ => return Err(bad()),
    };
    Ok(stats
        .final_states
        .iter()
        .map(|s| pick(s.matrix()[(i, j)]))
        .collect())
}
