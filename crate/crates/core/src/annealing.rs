//! Simulated annealing over a stage-wise geometric cooling schedule.
//!
//! Stage `k` (zero-based) runs `steps_per_stage` Metropolis-Hastings steps at
//! `t0 * factor^k`, continuing from where stage `k - 1` stopped. The best value
//! seen at any step is tracked alongside the final state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chain::{mh_step, ChainState};
use crate::diagnostics::ChainTrace;
use crate::error::{Error, Result};
use crate::objectives::Objective;
use crate::proposal::ProposalPolicy;

/// The generator behind every seeded run in this crate.
pub type SeededRng = ChaCha8Rng;

/// How the per-stage cooling factor is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case", tag = "mode", content = "factor")]
pub enum StageFactor {
    /// `(t_final / t0)^(1 / n_stages)`: the last stage boundary lands on `t_final`.
    #[default]
    Derived,
    /// Fixed factor applied once per stage. `t_final` is then only a bound.
    Explicit(f64),
    /// Fixed factor applied after every single step.
    PerStep(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoolingSchedule {
    pub t0: f64,
    pub t_final: f64,
    pub n_stages: usize,
    pub steps_per_stage: usize,
    #[serde(default)]
    pub factor: StageFactor,
}

impl CoolingSchedule {
    pub fn new(t0: f64, t_final: f64, n_stages: usize, steps_per_stage: usize) -> Result<Self> {
        let s = CoolingSchedule {
            t0,
            t_final,
            n_stages,
            steps_per_stage,
            factor: StageFactor::Derived,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_factor(mut self, factor: StageFactor) -> Result<Self> {
        self.factor = factor;
        self.validate()?;
        Ok(self)
    }

    /// `T0 = 2`, `T_final = 0.2`, 200 stages of 100 steps: 20,000 steps.
    pub fn preset_20k() -> Self {
        Self::new(2.0, 0.2, 200, 100).expect("valid preset")
    }

    /// Same temperature range with 500 steps per stage: 100,000 steps.
    pub fn preset_100k() -> Self {
        Self::new(2.0, 0.2, 200, 500).expect("valid preset")
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t0 > 0.0 && self.t0.is_finite()) {
            return Err(Error::config("t0", format!("must be positive, got {}", self.t0)));
        }
        if !(self.t_final > 0.0 && self.t_final < self.t0) {
            return Err(Error::config(
                "t_final",
                format!("must lie in (0, t0 = {}), got {}", self.t0, self.t_final),
            ));
        }
        if self.n_stages == 0 {
            return Err(Error::config("n_stages", "need at least one stage"));
        }
        if let StageFactor::Explicit(a) | StageFactor::PerStep(a) = self.factor {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::config("factor", format!("must lie in (0, 1), got {a}")));
            }
        }
        Ok(())
    }

    /// Multiplicative temperature change from one stage to the next.
    pub fn stage_factor(&self) -> f64 {
        match self.factor {
            StageFactor::Derived => (self.t_final / self.t0).powf(1.0 / self.n_stages as f64),
            StageFactor::Explicit(a) => a,
            StageFactor::PerStep(a) => a.powi(self.steps_per_stage as i32),
        }
    }

    pub fn total_steps(&self) -> usize {
        self.n_stages * self.steps_per_stage
    }

    /// Temperature at the start of stage `stage_index`, `0 <= stage_index <= n_stages`.
    ///
    /// Panics when the index is out of range.
    pub fn temperature_at(&self, stage_index: usize) -> f64 {
        assert!(
            stage_index <= self.n_stages,
            "stage {stage_index} outside 0..={}",
            self.n_stages
        );
        match self.factor {
            StageFactor::PerStep(a) => self.t0 * a.powf((stage_index * self.steps_per_stage) as f64),
            _ => self.t0 * self.stage_factor().powf(stage_index as f64),
        }
    }

    /// Temperature used for the zero-based global step `step`.
    pub fn temperature_for_step(&self, step: usize) -> f64 {
        match self.factor {
            StageFactor::PerStep(a) => self.t0 * a.powf(step as f64),
            _ => self.temperature_at(step / self.steps_per_stage.max(1)),
        }
    }
}

/// Per-stage aggregates, used for acceptance/best-value trend plots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageSummary {
    pub temperature: f64,
    pub acceptance_rate: f64,
    /// Best-so-far at the end of the stage.
    pub best_value: f64,
    pub final_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnealResult {
    pub best_value: f64,
    pub best_state: Vec<f64>,
    pub final_value: f64,
    pub final_state: Vec<f64>,
    /// Number of steps taken when the best value was first reached (0 is the
    /// initial state).
    pub step_of_best: usize,
    pub total_steps: usize,
    pub accepted_steps: usize,
    pub stages: Vec<StageSummary>,
    /// Per-step trace, kept every `trace_stride` steps when requested.
    pub trace: Option<ChainTrace>,
}

impl AnnealResult {
    pub fn acceptance_rate(&self) -> f64 {
        if self.total_steps == 0 {
            0.0
        } else {
            self.accepted_steps as f64 / self.total_steps as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AnnealOptions {
    /// Keep every `k`-th step in [`AnnealResult::trace`]; `None` keeps no trace.
    pub trace_stride: Option<usize>,
}

/// Anneals from a random initial state drawn with the run's own seeded rng.
pub fn anneal<O>(objective: &O, policy: &ProposalPolicy, schedule: &CoolingSchedule, seed: u64) -> Result<AnnealResult>
where
    O: Objective + ?Sized,
{
    anneal_with(objective, policy, schedule, seed, AnnealOptions::default())
}

pub fn anneal_with<O>(
    objective: &O,
    policy: &ProposalPolicy,
    schedule: &CoolingSchedule,
    seed: u64,
    options: AnnealOptions,
) -> Result<AnnealResult>
where
    O: Objective + ?Sized,
{
    let mut rng = SeededRng::seed_from_u64(seed);
    let x0 = objective.random_initial_state(&mut rng)?;
    anneal_from(objective, policy, schedule, x0, &mut rng, options)
}

pub fn anneal_from<O, R>(
    objective: &O,
    policy: &ProposalPolicy,
    schedule: &CoolingSchedule,
    x0: Vec<f64>,
    rng: &mut R,
    options: AnnealOptions,
) -> Result<AnnealResult>
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    schedule.validate()?;
    if policy.d > objective.dimension() {
        return Err(Error::config(
            "d",
            format!("moves {} coordinates of {}", policy.d, objective.dimension()),
        ));
    }
    let stride = options.trace_stride.map(|k| k.max(1));

    let f0 = objective.evaluate(&x0);
    let mut state = ChainState {
        x: x0,
        f_value: f0,
        temperature: schedule.t0,
        step_index: 0,
    };
    let mut best_value = f0;
    let mut best_state = state.x.clone();
    let mut step_of_best = 0;
    let mut accepted_steps = 0;
    let mut stages = Vec::with_capacity(schedule.n_stages);
    let mut trace = stride.map(|k| ChainTrace::with_capacity(schedule.total_steps() / k + 1));

    let mut step = 0usize;
    for stage in 0..schedule.n_stages {
        let mut stage_accepted = 0;
        let stage_temperature = schedule.temperature_at(stage);
        for _ in 0..schedule.steps_per_stage {
            state.temperature = schedule.temperature_for_step(step);
            let rec = mh_step(&mut state, objective, policy, rng);
            step += 1;
            if rec.accepted {
                stage_accepted += 1;
                if state.f_value < best_value {
                    best_value = state.f_value;
                    best_state.clone_from(&state.x);
                    step_of_best = step;
                }
            }
            if let (Some(t), Some(k)) = (trace.as_mut(), stride) {
                if step.is_multiple_of(k) {
                    t.push(state.f_value, rec.accepted, rec.delta_f);
                }
            }
        }
        accepted_steps += stage_accepted;
        stages.push(StageSummary {
            temperature: stage_temperature,
            acceptance_rate: if schedule.steps_per_stage == 0 {
                0.0
            } else {
                stage_accepted as f64 / schedule.steps_per_stage as f64
            },
            best_value,
            final_value: state.f_value,
        });
    }

    Ok(AnnealResult {
        best_value,
        best_state,
        final_value: state.f_value,
        final_state: state.x,
        step_of_best,
        total_steps: step,
        accepted_steps,
        stages,
        trace,
    })
}
