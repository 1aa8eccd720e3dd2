// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Two-sample Kolmogorov–Smirnov test with the asymptotic p-value.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::MonteCarloError;

/// Smallest accepted sample size per side.
pub const KS_MIN_SAMPLES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    /// `sup |ECDF_a − ECDF_b|`, in `[0, 1]`.
    pub statistic: f64,
    /// Asymptotic p-value, in `[0, 1]`.
    pub p_value: f64,
}

/// Two-sample KS test.
///
/// `p = Q_KS(√n_e · D)` with `n_e = n_a n_b / (n_a + n_b)` and
/// `Q_KS(λ) = 2 Σ_{k≥1} (−1)^{k−1} exp(−2k²λ²)`. Below `λ = 1.18` the
/// equivalent Jacobi-theta form `1 − (√(2π)/λ) Σ_{k≥1} exp(−(2k−1)²π²/(8λ²))`
/// is summed instead, because the alternating series converges slowly there.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult, MonteCarloError> {
    for s in [a, b] {
        if s.len() < KS_MIN_SAMPLES {
            return Err(MonteCarloError::TooFewSamples {
                len: s.len(),
                min: KS_MIN_SAMPLES,
            });
        }
        if s.iter().any(|x| x.is_nan()) {
            return Err(MonteCarloError::InvalidSpec("KS sample contains NaN".into()));
        }
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);

    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = if a[i] <= b[j] { a[i] } else { b[j] };
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let statistic = d.clamp(0.0, 1.0);
    let ne = na * nb / (na + nb);
    Ok(KsResult {
        statistic,
        p_value: kolmogorov_q(ne.sqrt() * statistic),
    })
}

/// Survival function of the Kolmogorov distribution.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let q = if lambda < 1.18 {
        let y = -PI * PI / (8.0 * lambda * lambda);
        let mut sum = 0.0;
        for k in 1..=50 {
            let m = (2 * k - 1) as f64;
            let term = (m * m * y).exp();
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        1.0 - (2.0 * PI).sqrt() / lambda * sum
    } else {
        let mut sum = 0.0;
        for k in 1..=100 {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            sum += if k % 2 == 1 { term } else { -term };
            if term < 1e-18 {
                break;
            }
        }
        2.0 * sum
    };
    q.clamp(0.0, 1.0)
}
