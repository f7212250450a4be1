//! Sample-driven threshold selection.
//!
//! For each criterion the indifference threshold is the `alpha`% quantile
//! and the preference threshold the `beta`% quantile of the absolute
//! differences over all unordered pairs of distinct alternatives.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::PerformanceMatrix;
use crate::preference::Thresholds;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TuningConfig {
    pub alpha: f64,
    pub beta: f64,
}

impl TuningConfig {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let cfg = TuningConfig { alpha, beta };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.alpha.is_finite()
            && self.beta.is_finite()
            && 0.0 <= self.alpha
            && self.alpha <= self.beta
            && self.beta <= 100.0;
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "quantile levels must satisfy 0 <= alpha <= beta <= 100 (alpha = {}, beta = {})",
                self.alpha, self.beta
            )))
        }
    }
}

impl Default for TuningConfig {
    fn default() -> Self {
        TuningConfig {
            alpha: 25.0,
            beta: 75.0,
        }
    }
}

/// `z`% quantile with linear interpolation between order statistics at
/// position `(N - 1) * z / 100`.
pub fn quantile(values: &[f64], z: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::invalid("quantile of an empty sample"));
    }
    if !(0.0..=100.0).contains(&z) {
        return Err(Error::invalid(format!("quantile level {z} outside [0, 100]")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("quantile of a sample with non-finite values"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(quantile_sorted(&sorted, z))
}

fn quantile_sorted(sorted: &[f64], z: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * z / 100.0;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    match sorted.get(lo + 1) {
        Some(&next) if frac > 0.0 => sorted[lo] + frac * (next - sorted[lo]),
        _ => sorted[lo],
    }
}

/// Absolute differences over unordered pairs `{i, j}`, `i != j`. Zeros from
/// tied values are kept.
pub fn pairwise_abs_differences(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((values[i] - values[j]).abs());
        }
    }
    out
}

pub fn tune_thresholds(values: &[f64], config: TuningConfig) -> Result<Thresholds> {
    config.validate()?;
    if values.len() < 2 {
        return Err(Error::invalid(format!(
            "threshold tuning needs at least 2 alternatives, got {}",
            values.len()
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite criterion value"));
    }
    let mut diffs = pairwise_abs_differences(values);
    diffs.sort_by(f64::total_cmp);
    let q = quantile_sorted(&diffs, config.alpha);
    let p = quantile_sorted(&diffs, config.beta).max(q);
    Ok(Thresholds {
        q,
        p,
        sigma: gaussian_sigma(q, p, &diffs),
    })
}

// Midpoint of the two thresholds; when both are zero, the mean difference,
// and 1 when every difference is zero.
fn gaussian_sigma(q: f64, p: f64, diffs: &[f64]) -> f64 {
    let mid = 0.5 * (q + p);
    if mid > 0.0 {
        return mid;
    }
    let mean = diffs.iter().sum::<f64>() / diffs.len() as f64;
    if mean > 0.0 {
        mean
    } else {
        1.0
    }
}

/// Tunes every criterion column of `perf`, keyed by criterion id.
pub fn tune_all(perf: &PerformanceMatrix, config: TuningConfig) -> Result<BTreeMap<String, Thresholds>> {
    perf.criteria()
        .iter()
        .enumerate()
        .map(|(k, id)| Ok((id.clone(), tune_thresholds(&perf.column(k), config)?)))
        .collect()
}
