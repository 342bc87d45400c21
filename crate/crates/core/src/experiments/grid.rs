use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{replicate_seed, Cell, ExperimentConfig};
use super::records::{read_records, verify_records, write_atomic, write_records, RunRecord};
use crate::annealing::{anneal, AnnealResult, CoolingSchedule};
use crate::error::{Error, Result};
use crate::objectives::{Benchmark, Objective};
use crate::proposal::ProposalPolicy;

pub const RECORDS_FILE: &str = "records.csv";
pub const TRENDS_FILE: &str = "trends.json";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const CONFIG_FILE: &str = "config.toml";

/// Per-stage series of one replicate (replicate 0) of a cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellTrend {
    pub cell: Cell,
    pub temperature: Vec<f64>,
    pub acceptance_rate: Vec<f64>,
    pub best_value: Vec<f64>,
}

impl CellTrend {
    fn from_result(cell: Cell, r: &AnnealResult) -> Self {
        CellTrend {
            cell,
            temperature: r.stages.iter().map(|s| s.temperature).collect(),
            acceptance_rate: r.stages.iter().map(|s| s.acceptance_rate).collect(),
            best_value: r.stages.iter().map(|s| s.best_value).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub config_hash: String,
    pub objective: String,
    pub replicates: usize,
    pub cells: usize,
    pub schedule: CoolingSchedule,
    pub complete: bool,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    /// Keep results already in the output directory and run only what is missing.
    pub resume: bool,
    /// Stop after this many pending cells (for checkpoint testing).
    pub stop_after_cells: Option<usize>,
    /// Directory against which relative paths in the config resolve.
    pub base_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridOutcome {
    /// Every record in the output directory, sorted.
    pub records: Vec<RunRecord>,
    pub trends: Vec<CellTrend>,
    /// Anneal calls made by this invocation.
    pub executed: usize,
    pub complete: bool,
}

/// Progress notification sent after each checkpoint.
#[derive(Debug, Clone, Copy)]
pub struct Progress {
    pub cells_done: usize,
    pub cells_total: usize,
    pub runs_executed: usize,
}

/// Runs every `(cell, replicate)` of `config` into `out_dir`.
///
/// Records, trends and a manifest are rewritten after each batch of cells,
/// so an interrupted run resumes where it stopped. Output files are sorted and
/// independent of the worker count.
pub fn run_grid(config: &ExperimentConfig, out_dir: impl AsRef<Path>, options: &RunOptions) -> Result<GridOutcome> {
    run_grid_with_progress(config, out_dir, options, |_| {})
}

pub fn run_grid_with_progress(
    config: &ExperimentConfig,
    out_dir: impl AsRef<Path>,
    options: &RunOptions,
    mut progress: impl FnMut(Progress),
) -> Result<GridOutcome> {
    config.validate()?;
    let out_dir = out_dir.as_ref();
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let schedule = config.schedule();
    let cells = config.cells();
    let hash = config.config_hash();

    let objectives: BTreeMap<usize, Benchmark> = cells
        .iter()
        .map(|c| c.n)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|n| Ok((n, config.objective.build(n, options.base_dir.as_deref())?)))
        .collect::<Result<_>>()?;

    let (mut records, mut trends) = if options.resume {
        load_previous(out_dir, &hash)?
    } else {
        (Vec::new(), Vec::new())
    };
    records.retain(|r| r.replicate < config.replicates && cells.iter().any(|c| c.sort_key() == r.cell.sort_key()));
    verify_records(&records, |n| objectives.get(&n).and_then(|o| o.known_minimum()))?;

    let done: BTreeSet<_> = records.iter().map(|r| r.sort_key()).collect();
    let has_trend: BTreeSet<_> = trends.iter().map(|t| t.cell.sort_key()).collect();
    let mut pending: Vec<(Cell, Vec<usize>)> = cells
        .iter()
        .map(|c| {
            let missing: Vec<usize> = (0..config.replicates)
                .filter(|&r| !done.contains(&(c.sort_key(), r)) || (r == 0 && !has_trend.contains(&c.sort_key())))
                .collect();
            (*c, missing)
        })
        .filter(|(_, m)| !m.is_empty())
        .collect();
    let cells_done_before = cells.len() - pending.len();
    if let Some(k) = options.stop_after_cells {
        pending.truncate(k);
    }
    let will_complete = cells_done_before + pending.len() == cells.len();

    std::fs::write(out_dir.join(CONFIG_FILE), config.to_toml_string())
        .map_err(|e| Error::io(out_dir.join(CONFIG_FILE), e))?;
    let mut manifest = Manifest {
        name: config.name.clone(),
        config_hash: hash,
        objective: config.objective.name().to_owned(),
        replicates: config.replicates,
        cells: cells.len(),
        schedule,
        complete: cells_done_before == cells.len(),
    };
    checkpoint(out_dir, &records, &trends, &manifest)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::config("workers", e.to_string()))?;
    let batch_target = 4 * pool.current_num_threads().max(1);

    let mut executed = 0;
    let mut cells_done = cells_done_before;
    let mut queue = pending.into_iter().peekable();
    while queue.peek().is_some() {
        let mut batch = Vec::new();
        let mut batch_cells = 0;
        while let Some((cell, reps)) = queue.next_if(|_| batch.len() < batch_target) {
            batch.extend(reps.into_iter().map(|r| (cell, r)));
            batch_cells += 1;
        }
        let results: Vec<(RunRecord, Option<CellTrend>)> = pool.install(|| {
            batch
                .par_iter()
                .map(|&(cell, rep)| run_one(config, &objectives[&cell.n], &schedule, cell, rep))
                .collect::<Result<_>>()
        })?;
        executed += results.len();
        for (rec, trend) in results {
            if let Some(t) = trend {
                trends.retain(|old| old.cell.sort_key() != t.cell.sort_key());
                trends.push(t);
            }
            records.retain(|old| old.sort_key() != rec.sort_key());
            records.push(rec);
        }
        cells_done += batch_cells;
        manifest.complete = cells_done == cells.len();
        checkpoint(out_dir, &records, &trends, &manifest)?;
        progress(Progress {
            cells_done,
            cells_total: cells.len(),
            runs_executed: executed,
        });
    }

    records.sort_by_key(|r| r.sort_key());
    trends.sort_by_key(|t| t.cell.sort_key());
    Ok(GridOutcome {
        records,
        trends,
        executed,
        complete: will_complete,
    })
}

fn run_one(
    config: &ExperimentConfig,
    objective: &Benchmark,
    schedule: &CoolingSchedule,
    cell: Cell,
    replicate: usize,
) -> Result<(RunRecord, Option<CellTrend>)> {
    let seed = replicate_seed(config.base_seed, &cell, replicate);
    let policy = ProposalPolicy::new(cell.d, cell.sigma2_total());
    let started = Instant::now();
    let result = anneal(objective, &policy, schedule, seed)?;
    let wall = started.elapsed().as_secs_f64();

    let reference = objective.known_minimum();
    let metric = config.metric_for(reference);
    let record = RunRecord {
        objective: config.objective.name().to_owned(),
        cell,
        replicate,
        seed,
        best_value: result.best_value,
        error_metric: metric,
        error_value: metric.error(result.best_value, reference),
        acceptance_rate: result.acceptance_rate(),
        wall_time_s: config.record_wall_time.then_some(wall),
    };
    let trend = (replicate == 0).then(|| CellTrend::from_result(cell, &result));
    Ok((record, trend))
}

fn checkpoint(out_dir: &Path, records: &[RunRecord], trends: &[CellTrend], manifest: &Manifest) -> Result<()> {
    write_records(records, out_dir.join(RECORDS_FILE))?;
    let mut sorted: Vec<&CellTrend> = trends.iter().collect();
    sorted.sort_by_key(|t| t.cell.sort_key());
    write_json(&out_dir.join(TRENDS_FILE), &sorted)?;
    write_json(&out_dir.join(MANIFEST_FILE), manifest)
}

pub(crate) fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Json {
        path: path.to_owned(),
        source: e,
    })?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.to_owned(),
        source: e,
    })
}

pub fn read_manifest(out_dir: impl AsRef<Path>) -> Result<Manifest> {
    read_json(&out_dir.as_ref().join(MANIFEST_FILE))
}

pub fn read_trends(out_dir: impl AsRef<Path>) -> Result<Vec<CellTrend>> {
    let path = out_dir.as_ref().join(TRENDS_FILE);
    if path.exists() {
        read_json(&path)
    } else {
        Ok(Vec::new())
    }
}

fn load_previous(out_dir: &Path, hash: &str) -> Result<(Vec<RunRecord>, Vec<CellTrend>)> {
    let manifest_path = out_dir.join(MANIFEST_FILE);
    if !manifest_path.exists() {
        return Ok((Vec::new(), Vec::new()));
    }
    let manifest: Manifest = read_json(&manifest_path)?;
    if manifest.config_hash != hash {
        return Err(Error::config(
            "output",
            format!(
                "{} holds results of a different configuration (hash {}); use a fresh directory or disable resume",
                out_dir.display(),
                manifest.config_hash
            ),
        ));
    }
    let records_path = out_dir.join(RECORDS_FILE);
    let records = if records_path.exists() {
        read_records(&records_path)?
    } else {
        Vec::new()
    };
    Ok((records, read_trends(out_dir)?))
}
