//! Runs a small seeded grid in-process, resumes it, then summarizes and writes
//! plot data. Same pipeline as `pcsa run`, `pcsa summarize`, `pcsa plot-data`.
//!
//! ```bash
//! cargo run --release -p pcsa --example grid_experiment -- /tmp/lj6-grid
//! ```

use std::path::PathBuf;

use pcsa::experiments::{
    emit_plot_data, render_table, run_grid, summarize_grid, ExperimentConfig, RunOptions,
};

const CONFIG: &str = r#"
name = "lj6-small"
base_seed = 3
replicates = 8

[objective]
kind = "lennard-jones"

[schedule]
preset = "20k"

[[grid]]
n = [6]
d = [1, 2, 4, 6]
inv_sigma2_total = [200, 10]
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("pcsa-grid-example"));
    let config = ExperimentConfig::from_toml_str(CONFIG)?;

    // stop halfway, then pick up where it left off
    let half = RunOptions {
        resume: true,
        stop_after_cells: Some(4),
        ..Default::default()
    };
    let first = run_grid(&config, &out, &half)?;
    let rest = run_grid(&config, &out, &RunOptions { resume: true, ..Default::default() })?;
    println!(
        "{} runs, then {} more; complete = {}",
        first.executed, rest.executed, rest.complete
    );

    let summary = summarize_grid(&rest.records, &config.cells());
    print!("{}", render_table(&summary));
    let plot = emit_plot_data(&summary, &rest.trends, out.join("plot_data.json"))?;
    println!(
        "{} violin groups, {} trend series in {}",
        plot.violins.len(),
        plot.trends.len(),
        out.display()
    );
    Ok(())
}
