//! Seeded replicate grids over `(objective, n, d, 1/sigma2_total)`.
//!
//! A run directory holds:
//!
//! - `records.csv`: one row per anneal call, sorted by cell then replicate
//! - `trends.json`: per-stage acceptance and best value of replicate 0 per cell
//! - `manifest.json`: config hash and completion flag, checked on resume
//! - `config.toml`: the canonical config

mod config;
mod grid;
mod plot;
mod records;
mod summary;

pub use config::{replicate_seed, Cell, ErrorMetric, ExperimentConfig, GridBlock, ObjectiveConfig, ScheduleConfig};
pub use grid::{
    read_manifest, read_trends, run_grid, run_grid_with_progress, CellTrend, GridOutcome, Manifest, Progress,
    RunOptions, CONFIG_FILE, MANIFEST_FILE, RECORDS_FILE, TRENDS_FILE,
};
pub use plot::{emit_plot_data, plot_data, PlotData, TrendSeries, ViolinGroup};
pub use records::{read_records, verify_records, write_records, RunRecord, CSV_HEADER};
pub use summary::{render_table, summarize_grid, write_summary_csv, CellSummary, GridSummary, SUMMARY_HEADER};
