// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Divergences between outcome distributions. Logarithms are natural (nats).

use std::f64::consts::LN_2;

use super::MetricError;
use crate::qcore::ProbabilityDistribution;

fn paired<'a>(
    p: &'a ProbabilityDistribution,
    q: &'a ProbabilityDistribution,
) -> Result<impl Iterator<Item = (f64, f64)> + 'a, MetricError> {
    if p.len() != q.len() {
        return Err(MetricError::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(p.weights().iter().copied().zip(q.weights().iter().copied()))
}

fn kl_raw(p: &[f64], q: &[f64]) -> f64 {
    let mut sum = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return f64::INFINITY;
        }
        sum += pi * (pi / qi).ln();
    }
    sum.max(0.0)
}

/// `Σ p ln(p/q)`; `+∞` when `q` misses part of `p`'s support.
pub fn kl_divergence(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MetricError> {
    let _ = paired(p, q)?;
    Ok(kl_raw(p.weights(), q.weights()))
}

/// `½KL(p‖m) + ½KL(q‖m)` with `m = ½(p + q)`; bounded by `ln 2`.
pub fn js_divergence(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MetricError> {
    let m: Vec<f64> = paired(p, q)?.map(|(a, b)| 0.5 * (a + b)).collect();
    let js = 0.5 * kl_raw(p.weights(), &m) + 0.5 * kl_raw(q.weights(), &m);
    Ok(js.clamp(0.0, LN_2))
}

/// Bhattacharyya coefficient and distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bhattacharyya {
    /// `Σ √(p q)`, in `[0, 1]`.
    pub coefficient: f64,
    /// `−ln(coefficient)`; `+∞` for disjoint supports.
    pub distance: f64,
}

pub fn bhattacharyya(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<Bhattacharyya, MetricError> {
    let _ = paired(p, q)?;
    if p == q {
        return Ok(Bhattacharyya {
            coefficient: 1.0,
            distance: 0.0,
        });
    }
    let coefficient = paired(p, q)?
        .map(|(a, b)| (a * b).sqrt())
        .sum::<f64>()
        .clamp(0.0, 1.0);
    let distance = if coefficient == 0.0 {
        f64::INFINITY
    } else {
        (-coefficient.ln()).max(0.0)
    };
    Ok(Bhattacharyya {
        coefficient,
        distance,
    })
}

/// One-dimensional earth mover's distance over unit-spaced bins,
/// `Σ_k |CDF_p(k) − CDF_q(k)|`.
///
/// The last bin is skipped: both CDFs equal one there.
pub fn earth_movers(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64, MetricError> {
    let pairs: Vec<(f64, f64)> = paired(p, q)?.collect();
    let mut cdf_p = 0.0;
    let mut cdf_q = 0.0;
    let mut total = 0.0;
    for &(a, b) in pairs.iter().take(pairs.len().saturating_sub(1)) {
        cdf_p += a;
        cdf_q += b;
        total += (cdf_p - cdf_q).abs();
    }
    Ok(total)
}
