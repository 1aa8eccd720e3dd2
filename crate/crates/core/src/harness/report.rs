// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! JSON and CSV rendering of verdicts, comparisons, ensembles and sweeps.
//!
//! JSON output is canonical: object keys sorted, two-space indentation,
//! trailing newline, so parsing and re-serializing reproduces the bytes.
//! Non-finite values are written as the strings `"inf"`/`"-inf"`/`"nan"`,
//! and undefined metrics as `"undefined"`.
//!
//! CSV headers (one header line, LF endings):
//!
//! - verdict: `metric,value,threshold,status`
//! - comparison: `time,<metric names>`
//! - ensemble: `metric,mean,std,ci95_half_width,n_defined`
//! - sweep: `parameter,value,<metric names>,error`
//!
//! where `<metric names>` is the eleven [`MetricKind`] names in declaration
//! order. Empty cells mean "not set" (thresholds) or "not applicable".

use std::str::FromStr;

use serde_json::{json, Map, Value};

use super::validate::ValidationVerdict;
use crate::metrics::{MetricKind, MetricReport, TrajectoryReport};
use crate::montecarlo::{EnsembleStatistics, KsResult, SweepParameter, SweepPoint};
use crate::qcore::DensityMatrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

/// KS comparison attached to an ensemble report.
#[derive(Clone, Debug, PartialEq)]
pub struct KsAttachment {
    /// What was sampled, e.g. `metric:euclidean`.
    pub quantity: String,
    pub result: KsResult,
}

/// Anything `emit_report` can render.
#[derive(Clone, Copy, Debug)]
pub enum Report<'a> {
    Verdict(&'a ValidationVerdict),
    Comparison(&'a TrajectoryReport),
    Ensemble {
        stats: &'a EnsembleStatistics,
        ks: Option<&'a KsAttachment>,
    },
    Sweep {
        parameter: SweepParameter,
        points: &'a [SweepPoint],
    },
}

pub fn emit_report(report: &Report<'_>, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report_json(report))
                .expect("values always serialize");
            s.push('\n');
            s.into_bytes()
        }
        ReportFormat::Csv => report_csv(report).into_bytes(),
    }
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn opt_num(x: Option<f64>) -> Value {
    x.map_or_else(|| json!("undefined"), num)
}

fn metrics_json(r: &MetricReport) -> Value {
    Value::Object(
        MetricKind::ALL
            .into_iter()
            .map(|k| (k.name().to_string(), opt_num(r.get(k))))
            .collect(),
    )
}

fn matrix_json(rho: &DensityMatrix) -> Value {
    rho.matrix()
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|z| json!([num(z.re), num(z.im)])).collect::<Value>())
        .collect()
}

pub fn report_json(report: &Report<'_>) -> Value {
    match *report {
        Report::Verdict(v) => {
            let per_metric: Map<String, Value> = v
                .per_metric
                .iter()
                .map(|m| {
                    (
                        m.kind.name().to_string(),
                        json!({
                            "value": opt_num(m.value),
                            "threshold": m.threshold.map_or(Value::Null, num),
                            "status": m.status.name(),
                        }),
                    )
                })
                .collect();
            json!({
                "overall": v.overall,
                "basis": v.basis.to_string(),
                "steps": v.steps,
                "per_metric": per_metric,
                "provenance": v.provenance,
            })
        }
        Report::Comparison(r) => json!({
            "aggregate": metrics_json(&r.aggregate),
            "worst": metrics_json(&r.worst),
            "per_step": r
                .times
                .iter()
                .zip(&r.per_step)
                .map(|(&t, m)| json!({"time": num(t), "metrics": metrics_json(m)}))
                .collect::<Vec<_>>(),
        }),
        Report::Ensemble { stats, ks } => {
            let metrics: Map<String, Value> = stats
                .summaries
                .iter()
                .map(|(k, s)| {
                    let v = match s {
                        Some(s) => json!({
                            "mean": num(s.mean),
                            "std": num(s.std),
                            "ci95_half_width": num(s.ci95_half_width),
                            "n_defined": s.n_defined,
                        }),
                        None => json!("undefined"),
                    };
                    (k.name().to_string(), v)
                })
                .collect();
            let mut out = json!({
                "n_runs": stats.n_runs,
                "master_seed": stats.master_seed,
                "metrics": metrics,
                "final_state_mean": matrix_json(&stats.final_state_mean),
            });
            if let Some(ks) = ks {
                out["ks"] = json!({
                    "quantity": ks.quantity,
                    "statistic": num(ks.result.statistic),
                    "p_value": num(ks.result.p_value),
                });
            }
            out
        }
        Report::Sweep { parameter, points } => json!({
            "parameter": parameter.name(),
            "points": points
                .iter()
                .map(|p| match &p.outcome {
                    Ok(m) => json!({"value": num(p.value), "metrics": metrics_json(m)}),
                    Err(e) => json!({"value": num(p.value), "error": e.to_string()}),
                })
                .collect::<Vec<_>>(),
        }),
    }
}

/// Shortest round-trip form; exponent notation outside `[1e-4, 1e15)`.
fn cell(x: f64) -> String {
    if x == 0.0 || (x.is_finite() && (1e-4..1e15).contains(&x.abs())) {
        format!("{x}")
    } else if x.is_finite() {
        format!("{x:e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn opt_cell(x: Option<f64>) -> String {
    x.map_or_else(|| "undefined".into(), cell)
}

/// Quotes a field that contains a delimiter, quote or line break.
fn text_cell(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn metric_header() -> String {
    MetricKind::ALL.map(MetricKind::name).join(",")
}

fn metric_cells(r: &MetricReport) -> String {
    MetricKind::ALL.map(|k| opt_cell(r.get(k))).join(",")
}

pub fn report_csv(report: &Report<'_>) -> String {
    let mut lines = Vec::new();
    match *report {
        Report::Verdict(v) => {
            lines.push("metric,value,threshold,status".to_string());
            for m in &v.per_metric {
                lines.push(format!(
                    "{},{},{},{}",
                    m.kind.name(),
                    opt_cell(m.value),
                    m.threshold.map_or_else(String::new, cell),
                    m.status.name()
                ));
            }
        }
        Report::Comparison(r) => {
            lines.push(format!("time,{}", metric_header()));
            for (&t, m) in r.times.iter().zip(&r.per_step) {
                lines.push(format!("{},{}", cell(t), metric_cells(m)));
            }
        }
        Report::Ensemble { stats, .. } => {
            lines.push("metric,mean,std,ci95_half_width,n_defined".to_string());
            for (k, s) in &stats.summaries {
                lines.push(match s {
                    Some(s) => format!(
                        "{},{},{},{},{}",
                        k.name(),
                        cell(s.mean),
                        cell(s.std),
                        cell(s.ci95_half_width),
                        s.n_defined
                    ),
                    None => format!("{},undefined,undefined,undefined,0", k.name()),
                });
            }
        }
        Report::Sweep { parameter, points } => {
            lines.push(format!("parameter,value,{},error", metric_header()));
            let blanks = vec![""; MetricKind::ALL.len()].join(",");
            for p in points {
                lines.push(match &p.outcome {
                    Ok(m) => format!("{},{},{},", parameter.name(), cell(p.value), metric_cells(m)),
                    Err(e) => format!(
                        "{},{},{},{}",
                        parameter.name(),
                        cell(p.value),
                        blanks,
                        text_cell(&e.to_string())
                    ),
                });
            }
        }
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Trajectory;
    use crate::harness::{validate, ThresholdSpec};
    use crate::metrics::trajectory_report;
    use crate::montecarlo::{MonteCarloError, SweepParameter};
    use crate::qcore::MeasurementBasis;

    fn traj(states: Vec<DensityMatrix>) -> Trajectory {
        let times = (0..states.len()).map(|k| k as f64 * 0.5).collect();
        Trajectory::new(times, states, 0.5).unwrap()
    }

    #[test]
    fn verdict_json_is_canonical() {
        let g = DensityMatrix::ground(2).unwrap();
        let e = DensityMatrix::excited(2).unwrap();
        let thresholds = ThresholdSpec::new([(MetricKind::Kl, 1.0)]).unwrap();
        let v = validate(&traj(vec![g, g]), &traj(vec![g, e]), &thresholds, MeasurementBasis::Computational)
            .unwrap();
        let bytes = emit_report(&Report::Verdict(&v), ReportFormat::Json);
        let parsed: Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(parsed["overall"], "fail");
        assert_eq!(parsed["per_metric"]["kl"]["value"], "inf");
        assert_eq!(parsed["per_metric"]["kl"]["status"], "fail");
        let mut again = serde_json::to_string_pretty(&parsed).unwrap();
        again.push('\n');
        assert_eq!(again.into_bytes(), bytes);

        let csv = String::from_utf8(emit_report(&Report::Verdict(&v), ReportFormat::Csv)).unwrap();
        assert!(csv.starts_with("metric,value,threshold,status\n"));
        assert!(csv.contains("\nkl,inf,1,fail\n"));
        assert_eq!(csv.lines().count(), 12);
    }

    #[test]
    fn zero_distances_round_trip() {
        let g = DensityMatrix::ground(2).unwrap();
        let t = traj(vec![g, g]);
        let r = trajectory_report(&t, &t, MeasurementBasis::Computational).unwrap();
        let parsed: Value = serde_json::from_slice(&emit_report(&Report::Comparison(&r), ReportFormat::Json)).unwrap();
        assert_eq!(parsed["worst"]["euclidean"].as_f64(), Some(0.0));
        assert_eq!(parsed["per_step"].as_array().unwrap().len(), 2);
        let csv = report_csv(&Report::Comparison(&r));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn sweep_csv_rows() {
        let g = DensityMatrix::ground(2).unwrap();
        let r = crate::metrics::metric_report(&g, &g, MeasurementBasis::Computational).unwrap();
        let mut points: Vec<SweepPoint> = (0..6)
            .map(|k| SweepPoint {
                value: k as f64,
                outcome: Ok(r),
            })
            .collect();
        points.push(SweepPoint {
            value: 6.0,
            outcome: Err(MonteCarloError::InvalidSpec("bad, \"really\"".into())),
        });
        let csv = report_csv(&Report::Sweep {
            parameter: SweepParameter::Gamma,
            points: &points,
        });
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 8);
        assert!(lines[0].starts_with("parameter,value,euclidean,"));
        assert!(lines[7].ends_with("\"invalid specification: bad, \"\"really\"\"\""));
    }
}
