use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::ErrorMetric;
use super::grid::{write_json, CellTrend};
use super::summary::GridSummary;
use crate::error::{Error, Result};

/// Raw replicate values of one cell, for violin plots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolinGroup {
    pub n: usize,
    pub d: usize,
    pub inv_sigma2_total: f64,
    pub metric: ErrorMetric,
    pub scale: f64,
    pub values: Vec<f64>,
}

/// One per-stage series of a cell: `acceptance_rate` or `best_value`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendSeries {
    pub n: usize,
    pub d: usize,
    pub inv_sigma2_total: f64,
    pub metric: String,
    pub temperature: Vec<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotData {
    pub objective: String,
    pub violins: Vec<ViolinGroup>,
    pub trends: Vec<TrendSeries>,
}

pub fn plot_data(summary: &GridSummary, trends: &[CellTrend]) -> Result<PlotData> {
    let violins: Vec<ViolinGroup> = summary
        .cells
        .iter()
        .filter_map(|c| {
            let s = c.summary.as_ref()?;
            Some(ViolinGroup {
                n: c.cell.n,
                d: c.cell.d,
                inv_sigma2_total: c.cell.inv_sigma2_total,
                metric: c.metric?,
                scale: c.scale,
                values: s.values.clone(),
            })
        })
        .collect();
    if violins.is_empty() {
        return Err(Error::EmptySummary);
    }
    let mut sorted: Vec<&CellTrend> = trends.iter().collect();
    sorted.sort_by_key(|t| t.cell.sort_key());
    let trends = sorted
        .into_iter()
        .flat_map(|t| {
            [("acceptance_rate", &t.acceptance_rate), ("best_value", &t.best_value)].map(|(metric, values)| {
                TrendSeries {
                    n: t.cell.n,
                    d: t.cell.d,
                    inv_sigma2_total: t.cell.inv_sigma2_total,
                    metric: metric.to_owned(),
                    temperature: t.temperature.clone(),
                    values: values.clone(),
                }
            })
        })
        .collect();
    Ok(PlotData {
        objective: summary.objective.clone(),
        violins,
        trends,
    })
}

/// Writes [`plot_data`] as JSON.
pub fn emit_plot_data(summary: &GridSummary, trends: &[CellTrend], path: impl AsRef<Path>) -> Result<PlotData> {
    let data = plot_data(summary, trends)?;
    write_json(path.as_ref(), &data)?;
    Ok(data)
}
