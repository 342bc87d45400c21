//! Fixed-temperature Metropolis-Hastings targeting `exp(-f / T)`.
//!
//! Proposals are symmetric Gaussians, so the acceptance probability is
//! `min(1, exp(-delta_f / T))`. The test is done in log space: accept iff
//! `ln u <= min(0, -delta_f / T)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diagnostics::ChainTrace;
use crate::objectives::Objective;
use crate::proposal::{propose, ProposalPolicy};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainState {
    pub x: Vec<f64>,
    /// Cached `f(x)`.
    pub f_value: f64,
    pub temperature: f64,
    pub step_index: u64,
}

impl ChainState {
    pub fn new(objective: &dyn Objective, x: Vec<f64>, temperature: f64) -> Self {
        assert!(temperature > 0.0, "temperature must be positive, got {temperature}");
        let f_value = objective.evaluate(&x);
        ChainState {
            x,
            f_value,
            temperature,
            step_index: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub accepted: bool,
    /// `f(y) - f(x)` for the proposed `y`.
    pub delta_f: f64,
    /// `-delta_f / T`.
    pub log_ratio: f64,
}

/// `min(1, exp(log_ratio))`.
pub fn acceptance_probability(log_ratio: f64) -> f64 {
    log_ratio.min(0.0).exp()
}

/// One Metropolis-Hastings transition. Exactly one objective evaluation.
///
/// Panics if the proposed change is not finite.
pub fn mh_step<O, R>(state: &mut ChainState, objective: &O, policy: &ProposalPolicy, rng: &mut R) -> StepRecord
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    assert!(state.temperature > 0.0, "temperature must be positive");
    let proposal = propose(policy, &state.x, rng);
    let f_new = objective.evaluate(&proposal.candidate);
    let delta_f = f_new - state.f_value;
    assert!(
        delta_f.is_finite(),
        "non-finite objective change {delta_f} at step {}",
        state.step_index
    );
    let log_ratio = -delta_f / state.temperature;
    let u: f64 = rng.random();
    let accepted = u.ln() <= log_ratio.min(0.0);
    if accepted {
        state.x = proposal.candidate;
        state.f_value = f_new;
    }
    state.step_index += 1;
    StepRecord {
        accepted,
        delta_f,
        log_ratio,
    }
}

/// Runs `n_steps` transitions at the state's temperature.
pub fn run_fixed_temperature<O, R>(
    state: &mut ChainState,
    objective: &O,
    policy: &ProposalPolicy,
    n_steps: usize,
    rng: &mut R,
) -> ChainTrace
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let mut trace = ChainTrace::with_capacity(n_steps);
    for _ in 0..n_steps {
        let rec = mh_step(state, objective, policy, rng);
        trace.push(state.f_value, rec.accepted, rec.delta_f);
    }
    trace
}
