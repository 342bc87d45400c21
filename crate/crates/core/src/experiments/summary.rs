use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{Cell, ErrorMetric};
use super::records::{fmt_float, write_atomic, RunRecord};
use crate::diagnostics::{summarize, ReplicateSummary};
use crate::error::Result;

pub const SUMMARY_HEADER: &str = "objective,n,d,inv_sigma2_total,metric,scale,count,mean,std_dev";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub cell: Cell,
    /// `None` for a missing cell.
    pub metric: Option<ErrorMetric>,
    /// Factor applied to the raw values (100 for relative errors).
    pub scale: f64,
    /// `None` when the cell has no records.
    pub summary: Option<ReplicateSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSummary {
    pub objective: String,
    pub cells: Vec<CellSummary>,
}

impl GridSummary {
    pub fn missing(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.summary.is_none()).map(|c| &c.cell)
    }

    pub fn get(&self, n: usize, d: usize, inv_sigma2_total: f64) -> Option<&CellSummary> {
        self.cells
            .iter()
            .find(|c| c.cell.n == n && c.cell.d == d && c.cell.inv_sigma2_total == inv_sigma2_total)
    }
}

/// Mean and standard deviation of the error per cell. Relative errors are
/// reported in percent. Cells in `expected` without records are listed as
/// missing; cells that only appear in `records` are included too.
pub fn summarize_grid(records: &[RunRecord], expected: &[Cell]) -> GridSummary {
    let mut groups: BTreeMap<_, (Cell, Vec<&RunRecord>)> = BTreeMap::new();
    for c in expected {
        groups.entry(c.sort_key()).or_insert((*c, Vec::new()));
    }
    for r in records {
        groups.entry(r.cell.sort_key()).or_insert((r.cell, Vec::new())).1.push(r);
    }

    let cells = groups
        .into_values()
        .map(|(cell, mut rs)| {
            rs.sort_by_key(|r| r.replicate);
            let metric = rs.first().map(|r| r.error_metric);
            let scale = if metric == Some(ErrorMetric::Relative) { 100.0 } else { 1.0 };
            let values: Vec<f64> = rs.iter().map(|r| r.metric_value() * scale).collect();
            CellSummary {
                cell,
                metric,
                scale,
                summary: summarize(&values).ok(),
            }
        })
        .collect();
    GridSummary {
        objective: records.first().map(|r| r.objective.clone()).unwrap_or_default(),
        cells,
    }
}

pub fn write_summary_csv(summary: &GridSummary, path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for c in &summary.cells {
        let (count, mean, sd) = match &c.summary {
            Some(s) => (s.count, fmt_float(s.mean), s.std_dev.map(fmt_float).unwrap_or_default()),
            None => (0, String::new(), String::new()),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            summary.objective,
            c.cell.n,
            c.cell.d,
            fmt_float(c.cell.inv_sigma2_total),
            c.metric.map_or("missing", |m| m.as_str()),
            fmt_float(c.scale),
            count,
            mean,
            sd
        )
        .unwrap();
    }
    write_atomic(path.as_ref(), out.as_bytes())
}

/// Plain-text table: one block per size, rows `d`, columns `1/sigma2_total`
/// (descending), entries `mean ± std`.
pub fn render_table(summary: &GridSummary) -> String {
    let mut out = String::new();
    let mut sizes: Vec<usize> = summary.cells.iter().map(|c| c.cell.n).collect();
    sizes.dedup();
    for n in sizes {
        let block: Vec<&CellSummary> = summary.cells.iter().filter(|c| c.cell.n == n).collect();
        let mut cols: Vec<f64> = block.iter().map(|c| c.cell.inv_sigma2_total).collect();
        cols.sort_by(|a, b| b.total_cmp(a));
        cols.dedup();
        let mut rows: Vec<usize> = block.iter().map(|c| c.cell.d).collect();
        rows.sort_unstable();
        rows.dedup();
        let unit = match block.iter().find_map(|c| c.metric) {
            Some(ErrorMetric::Relative) => "relative error, %",
            Some(ErrorMetric::Absolute) => "absolute error",
            _ => "best value",
        };

        writeln!(out, "{} n = {n} ({unit})", summary.objective).unwrap();
        write!(out, "{:>5}", "d").unwrap();
        for c in &cols {
            write!(out, " | {:>23}", format!("1/s2 = {c}")).unwrap();
        }
        out.push('\n');
        for d in rows {
            write!(out, "{d:>5}").unwrap();
            for &col in &cols {
                let entry = match block.iter().find(|c| c.cell.d == d && c.cell.inv_sigma2_total == col) {
                    None => "-".to_owned(),
                    Some(CellSummary { summary: None, .. }) => "missing".to_owned(),
                    Some(CellSummary { summary: Some(s), .. }) => {
                        format!("{:.3e} ± {:.2e}", s.mean, s.std_dev.unwrap_or(0.0))
                    }
                };
                write!(out, " | {entry:>23}").unwrap();
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}
