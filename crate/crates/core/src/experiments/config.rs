use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::annealing::{CoolingSchedule, StageFactor};
use crate::error::{Error, Result};
use crate::objectives::{
    Benchmark, HyperEllipsoid, LennardJones, LennardJonesParams, Objective, ReferenceTable, Rosenbrock,
};

/// Error metric recorded for each run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorMetric {
    /// `(best - ref) / |ref|`.
    Relative,
    /// `best - ref`.
    Absolute,
    /// No reference available; only the best value is meaningful.
    None,
}

impl ErrorMetric {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorMetric::Relative => "relative",
            ErrorMetric::Absolute => "absolute",
            ErrorMetric::None => "none",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "relative" => Some(ErrorMetric::Relative),
            "absolute" => Some(ErrorMetric::Absolute),
            "none" => Some(ErrorMetric::None),
            _ => None,
        }
    }

    /// Error of `best` against `reference`; `None` when there is no reference.
    pub fn error(self, best: f64, reference: Option<f64>) -> Option<f64> {
        match (self, reference) {
            (ErrorMetric::Relative, Some(r)) => Some((best - r) / r.abs()),
            (ErrorMetric::Absolute, Some(r)) => Some(best - r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ObjectiveConfig {
    LennardJones {
        #[serde(default = "one")]
        epsilon: f64,
        #[serde(default = "one")]
        sigma: f64,
        #[serde(default = "default_overlap_floor")]
        overlap_floor: f64,
        /// Reference table to use instead of the bundled one.
        #[serde(default)]
        reference_file: Option<PathBuf>,
    },
    Rosenbrock,
    HyperEllipsoid,
}

fn one() -> f64 {
    1.0
}

fn default_overlap_floor() -> f64 {
    0.4
}

impl ObjectiveConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ObjectiveConfig::LennardJones { .. } => "lennard-jones",
            ObjectiveConfig::Rosenbrock => "rosenbrock",
            ObjectiveConfig::HyperEllipsoid => "hyper-ellipsoid",
        }
    }

    /// Coordinate count for a problem of size `n` (particles for LJ).
    pub fn dimension(&self, n: usize) -> usize {
        match self {
            ObjectiveConfig::LennardJones { .. } => 3 * n,
            _ => n,
        }
    }

    fn default_metric(&self) -> ErrorMetric {
        match self {
            ObjectiveConfig::LennardJones { .. } => ErrorMetric::Relative,
            _ => ErrorMetric::Absolute,
        }
    }

    /// Builds the objective of size `n`. Relative paths in `reference_file`
    /// resolve against `base_dir`.
    pub fn build(&self, n: usize, base_dir: Option<&Path>) -> Result<Benchmark> {
        Ok(match self {
            ObjectiveConfig::LennardJones {
                epsilon,
                sigma,
                overlap_floor,
                reference_file,
            } => {
                let params = LennardJonesParams {
                    particle_count: n,
                    epsilon: *epsilon,
                    sigma: *sigma,
                    overlap_floor: *overlap_floor,
                };
                let lj = match reference_file {
                    None => LennardJones::new(params)?,
                    Some(p) => {
                        let path = match base_dir {
                            Some(b) if p.is_relative() => b.join(p),
                            _ => p.clone(),
                        };
                        let table = ReferenceTable::load(path)?;
                        LennardJones::with_reference(params, table.lennard_jones(n).map(|e| e * epsilon))?
                    }
                };
                Benchmark::LennardJones(lj)
            }
            ObjectiveConfig::Rosenbrock => Benchmark::Rosenbrock(Rosenbrock::new(n)?),
            ObjectiveConfig::HyperEllipsoid => Benchmark::HyperEllipsoid(HyperEllipsoid::standard(n)?),
        })
    }
}

/// Schedule section: an optional named preset overridden by explicit fields.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleConfig {
    /// `"20k"` or `"100k"`.
    pub preset: Option<String>,
    pub t0: Option<f64>,
    pub t_final: Option<f64>,
    pub n_stages: Option<usize>,
    pub steps_per_stage: Option<usize>,
    /// Fixed cooling factor; by default applied once per stage.
    pub alpha: Option<f64>,
    /// `"stage"` (default) or `"step"`.
    pub alpha_mode: Option<String>,
}

impl ScheduleConfig {
    pub fn preset(name: &str) -> Self {
        ScheduleConfig {
            preset: Some(name.to_owned()),
            ..Default::default()
        }
    }

    pub fn resolve(&self) -> Result<CoolingSchedule> {
        let mut s = match self.preset.as_deref() {
            None | Some("20k") => CoolingSchedule::preset_20k(),
            Some("100k") => CoolingSchedule::preset_100k(),
            Some(other) => {
                return Err(Error::config(
                    "schedule.preset",
                    format!("unknown preset `{other}` (expected `20k` or `100k`)"),
                ))
            }
        };
        if let Some(v) = self.t0 {
            s.t0 = v;
        }
        if let Some(v) = self.t_final {
            s.t_final = v;
        }
        if let Some(v) = self.n_stages {
            s.n_stages = v;
        }
        if let Some(v) = self.steps_per_stage {
            s.steps_per_stage = v;
        }
        s.factor = match (self.alpha, self.alpha_mode.as_deref()) {
            (None, None) => StageFactor::Derived,
            (None, Some(_)) => return Err(Error::config("schedule.alpha_mode", "given without `alpha`")),
            (Some(a), None | Some("stage")) => StageFactor::Explicit(a),
            (Some(a), Some("step")) => StageFactor::PerStep(a),
            (Some(_), Some(other)) => {
                return Err(Error::config(
                    "schedule.alpha_mode",
                    format!("unknown mode `{other}` (expected `stage` or `step`)"),
                ))
            }
        };
        s.validate().map_err(|e| match e {
            Error::Config { field, message } => Error::config(format!("schedule.{field}"), message),
            other => other,
        })?;
        Ok(s)
    }
}

/// One rectangular block of the grid: every combination of its lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBlock {
    /// Problem sizes (particle count for LJ, dimension otherwise).
    pub n: Vec<usize>,
    pub d: Vec<usize>,
    pub inv_sigma2_total: Vec<f64>,
}

/// Coordinates of one grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub n: usize,
    pub d: usize,
    pub inv_sigma2_total: f64,
}

impl Cell {
    pub fn sigma2_total(&self) -> f64 {
        1.0 / self.inv_sigma2_total
    }

    /// Total order used for every sorted output: `n`, then `d`, then `1/sigma2`.
    pub fn sort_key(&self) -> (usize, usize, u64) {
        // bit patterns of positive floats sort like the floats
        (self.n, self.d, self.inv_sigma2_total.to_bits())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    /// Defaults to relative for LJ and absolute otherwise.
    #[serde(default)]
    pub metric: Option<ErrorMetric>,
    /// Fill the `wall_time_s` column. Off by default so output is reproducible.
    #[serde(default)]
    pub record_wall_time: bool,
    /// Default output directory for `run`.
    #[serde(default)]
    pub output: Option<PathBuf>,
    pub objective: ObjectiveConfig,
    #[serde(default)]
    pub schedule: ScheduleConfig,
    pub grid: Vec<GridBlock>,
}

fn default_replicates() -> usize {
    50
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Toml {
            path: PathBuf::from("<inline>"),
            source: e,
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: ExperimentConfig = toml::from_str(&text).map_err(|e| Error::Toml {
            path: path.to_owned(),
            source: e,
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::config("replicates", "need at least one replicate"));
        }
        if self.grid.is_empty() {
            return Err(Error::config("grid", "no grid blocks"));
        }
        self.schedule.resolve()?;
        if let ObjectiveConfig::LennardJones {
            epsilon,
            sigma,
            overlap_floor,
            ..
        } = &self.objective
        {
            for (field, v) in [("epsilon", epsilon), ("sigma", sigma), ("overlap_floor", overlap_floor)] {
                if !(*v > 0.0 && v.is_finite()) {
                    return Err(Error::config(format!("objective.{field}"), format!("must be positive, got {v}")));
                }
            }
        }
        for (b, block) in self.grid.iter().enumerate() {
            let field = |name: &str| format!("grid[{b}].{name}");
            for (name, empty) in [
                ("n", block.n.is_empty()),
                ("d", block.d.is_empty()),
                ("inv_sigma2_total", block.inv_sigma2_total.is_empty()),
            ] {
                if empty {
                    return Err(Error::config(field(name), "empty list"));
                }
            }
            for &v in &block.inv_sigma2_total {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::config(field("inv_sigma2_total"), format!("must be positive, got {v}")));
                }
            }
            for &n in &block.n {
                let min = match self.objective {
                    ObjectiveConfig::HyperEllipsoid => 1,
                    _ => 2,
                };
                if n < min {
                    return Err(Error::config(field("n"), format!("size {n} below minimum {min}")));
                }
                let dim = self.objective.dimension(n);
                for &d in &block.d {
                    if d == 0 || d > dim {
                        return Err(Error::config(
                            field("d"),
                            format!("d = {d} outside 1..={dim} for n = {n}"),
                        ));
                    }
                }
            }
        }
        if self.metric == Some(ErrorMetric::Relative) {
            for cell in self.cells() {
                if let Some(r) = self.objective.build(cell.n, None).ok().and_then(|o| o.known_minimum()) {
                    if r == 0.0 {
                        return Err(Error::config(
                            "metric",
                            format!("relative error is undefined: reference minimum is 0 for n = {}", cell.n),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn schedule(&self) -> CoolingSchedule {
        self.schedule.resolve().expect("validated schedule")
    }

    /// Metric for problems whose reference minimum is `reference`.
    pub fn metric_for(&self, reference: Option<f64>) -> ErrorMetric {
        match reference {
            None => ErrorMetric::None,
            Some(_) => self.metric.unwrap_or_else(|| self.objective.default_metric()),
        }
    }

    /// Distinct grid cells in sorted order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells: Vec<Cell> = self
            .grid
            .iter()
            .flat_map(|b| {
                b.n.iter().flat_map(move |&n| {
                    b.d.iter().flat_map(move |&d| {
                        b.inv_sigma2_total.iter().map(move |&s| Cell {
                            n,
                            d,
                            inv_sigma2_total: s,
                        })
                    })
                })
            })
            .collect();
        cells.sort_by_key(Cell::sort_key);
        cells.dedup_by_key(|c| c.sort_key());
        cells
    }

    /// Hex SHA-256 of the canonical serialized config.
    pub fn config_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_toml_string().as_bytes()))
    }
}

/// Replicate seed from `(base_seed, cell, replicate)`.
///
/// Mixes with the splitmix64 finalizer so neighbouring cells and replicates
/// get unrelated streams.
pub fn replicate_seed(base_seed: u64, cell: &Cell, replicate: usize) -> u64 {
    let mut h = base_seed;
    for word in [cell.n as u64, cell.d as u64, cell.inv_sigma2_total.to_bits(), replicate as u64] {
        h = splitmix(h ^ splitmix(word));
    }
    h
}

fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
