use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    acceptance_edgeworth, acceptance_gaussian, average_triples, cumulants_fixed_subset, LocalModel, SubsetAverage,
    SubsetPlan,
};
use crate::chain::acceptance_probability;
use crate::objectives::Objective;
use crate::proposal::{propose, ProposalPolicy};

/// Predicted versus measured one-shot acceptance from a fixed point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionReport {
    pub objective: String,
    pub dimension: usize,
    pub d: usize,
    pub sigma2_total: f64,
    pub temperature: f64,
    pub n_proposals: usize,
    /// Mean of `min(1, exp(-delta_f / T))` over the proposals.
    pub empirical: f64,
    /// `sqrt(p (1 - p) / n)` for the empirical mean.
    pub std_error: f64,
    /// Subset average of the per-subset Gaussian prediction.
    pub gaussian: f64,
    /// Subset average of the per-subset Edgeworth prediction.
    pub edgeworth: f64,
    /// Number of subsets whose Edgeworth value had to be clamped.
    pub edgeworth_clamped: usize,
    pub cumulants: SubsetAverage,
}

/// Draws `n_proposals` independent proposals from `x` and compares their mean
/// acceptance probability with the Gaussian and Edgeworth predictions.
///
/// Predictions are mixtures: each subset gets its own cumulants and
/// acceptance value, then those values are averaged over the subsets (all of
/// them when `C(N, d) <= 10^4`).
pub fn predict_vs_empirical<O, R>(
    objective: &O,
    x: &[f64],
    policy: &ProposalPolicy,
    temperature: f64,
    n_proposals: usize,
    rng: &mut R,
) -> PredictionReport
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    assert!(n_proposals >= 1_000, "need at least 1000 proposals, got {n_proposals}");
    assert!(temperature > 0.0, "temperature must be positive");

    let f_x = objective.evaluate(x);
    let empirical = (0..n_proposals)
        .map(|_| {
            let y = propose(policy, x, rng).candidate;
            acceptance_probability(-(objective.evaluate(&y) - f_x) / temperature)
        })
        .sum::<f64>()
        / n_proposals as f64;
    let std_error = (empirical * (1.0 - empirical) / n_proposals as f64).sqrt();

    let plan = SubsetPlan::new(policy, objective.dimension(), rng);
    let gradient = objective.gradient(x);
    let hessian = objective.hessian(x);
    let sigma2 = policy.per_coordinate_variance();

    let mut triples = Vec::with_capacity(plan.subsets.len());
    let (mut gaussian, mut edgeworth, mut clamped) = (0.0, 0.0, 0);
    for subset in &plan.subsets {
        let c = cumulants_fixed_subset(&LocalModel::restrict(&gradient, &hessian, subset, temperature, sigma2));
        let g = acceptance_gaussian(&c);
        gaussian += g;
        if c.kappa2 > 0.0 {
            let e = acceptance_edgeworth(&c);
            edgeworth += e.value;
            clamped += usize::from(e.clamped);
        } else {
            edgeworth += g;
        }
        triples.push(c);
    }
    let k = plan.subsets.len() as f64;

    PredictionReport {
        objective: objective.name().to_owned(),
        dimension: objective.dimension(),
        d: policy.d,
        sigma2_total: policy.sigma2_total,
        temperature,
        n_proposals,
        empirical,
        std_error,
        gaussian: gaussian / k,
        edgeworth: edgeworth / k,
        edgeworth_clamped: clamped,
        cumulants: average_triples(&triples, plan.exact),
    }
}
