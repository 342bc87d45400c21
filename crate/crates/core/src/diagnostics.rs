//! Chain-quality metrics: acceptance rate, lag autocorrelation of the
//! objective series, mean absolute accepted increment, and replicate summaries.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fraction of leading steps dropped before computing fixed-temperature
/// diagnostics.
pub const DEFAULT_BURN_IN: f64 = 0.1;

/// Per-step record of a chain.
///
/// `f_series[t]` is the objective after step `t`; `delta_f_series[t]` is the
/// proposed change at step `t`, applied only if `accept_flags[t]` is set.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ChainTrace {
    pub f_series: Vec<f64>,
    pub accept_flags: Vec<bool>,
    pub delta_f_series: Vec<f64>,
}

impl ChainTrace {
    pub fn with_capacity(n: usize) -> Self {
        ChainTrace {
            f_series: Vec::with_capacity(n),
            accept_flags: Vec::with_capacity(n),
            delta_f_series: Vec::with_capacity(n),
        }
    }

    pub fn push(&mut self, f_value: f64, accepted: bool, delta_f: f64) {
        self.f_series.push(f_value);
        self.accept_flags.push(accepted);
        self.delta_f_series.push(delta_f);
    }

    pub fn len(&self) -> usize {
        self.accept_flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.accept_flags.is_empty()
    }

    pub fn accepted_count(&self) -> usize {
        self.accept_flags.iter().filter(|&&a| a).count()
    }

    pub fn extend(&mut self, other: &ChainTrace) {
        self.f_series.extend_from_slice(&other.f_series);
        self.accept_flags.extend_from_slice(&other.accept_flags);
        self.delta_f_series.extend_from_slice(&other.delta_f_series);
    }

    /// Steps in `range`, as an owned trace.
    pub fn slice(&self, range: Range<usize>) -> ChainTrace {
        ChainTrace {
            f_series: self.f_series[range.clone()].to_vec(),
            accept_flags: self.accept_flags[range.clone()].to_vec(),
            delta_f_series: self.delta_f_series[range].to_vec(),
        }
    }

    /// Drops the leading `fraction` of steps.
    pub fn after_burn_in(&self, fraction: f64) -> ChainTrace {
        assert!((0.0..1.0).contains(&fraction), "burn-in fraction {fraction}");
        let start = (self.len() as f64 * fraction).floor() as usize;
        self.slice(start..self.len())
    }
}

/// Fraction of accepted steps over `window` (the whole trace when `None`).
pub fn acceptance_rate(trace: &ChainTrace, window: Option<Range<usize>>) -> Result<f64> {
    if trace.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let window = window.unwrap_or(0..trace.len());
    if window.is_empty() || window.end > trace.len() {
        return Err(Error::EmptyWindow {
            start: window.start,
            end: window.end,
            len: trace.len(),
        });
    }
    let n = window.len();
    let accepted = trace.accept_flags[window].iter().filter(|&&a| a).count();
    Ok(accepted as f64 / n as f64)
}

/// Biased lag autocorrelation `rho(0..=max_lag)` of a series, normalized by
/// the full-series variance so that `rho(0) == 1` and `|rho| <= 1`.
pub fn autocorrelation(series: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    let n = series.len();
    if n <= max_lag {
        return Err(Error::SeriesTooShort { len: n, max_lag });
    }
    let mean = series.iter().sum::<f64>() / n as f64;
    let centered: Vec<f64> = series.iter().map(|v| v - mean).collect();
    let c0: f64 = centered.iter().map(|v| v * v).sum();
    if !(c0 > 0.0) {
        return Err(Error::DegenerateSeries);
    }
    let mut rho = Vec::with_capacity(max_lag + 1);
    rho.push(1.0);
    for lag in 1..=max_lag {
        let c: f64 = centered[..n - lag]
            .iter()
            .zip(&centered[lag..])
            .map(|(a, b)| a * b)
            .sum();
        rho.push(c / c0);
    }
    Ok(rho)
}

/// Mean `|delta_f|` over accepted steps; `None` when nothing was accepted.
pub fn mean_abs_increment(trace: &ChainTrace) -> Result<Option<f64>> {
    if trace.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let (sum, count) = trace
        .accept_flags
        .iter()
        .zip(&trace.delta_f_series)
        .filter(|(a, _)| **a)
        .fold((0.0, 0usize), |(s, c), (_, d)| (s + d.abs(), c + 1));
    Ok((count > 0).then(|| sum / count as f64))
}

/// Mean and sample standard deviation of replicate values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateSummary {
    pub mean: f64,
    /// `n - 1` denominator; `None` for a single value.
    pub std_dev: Option<f64>,
    pub count: usize,
    pub values: Vec<f64>,
}

impl ReplicateSummary {
    /// `std_dev / sqrt(count)`, when defined.
    pub fn std_error(&self) -> Option<f64> {
        self.std_dev.map(|s| s / (self.count as f64).sqrt())
    }
}

pub fn summarize(values: &[f64]) -> Result<ReplicateSummary> {
    if values.is_empty() {
        return Err(Error::EmptySummary);
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let std_dev = (n >= 2).then(|| {
        let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
        (ss / (n - 1) as f64).sqrt()
    });
    Ok(ReplicateSummary {
        mean,
        std_dev,
        count: n,
        values: values.to_vec(),
    })
}
