//! Partial-coordinate Gaussian proposals.
//!
//! A move picks `d` of the `N` coordinates, adds independent zero-mean
//! Gaussian noise to each, and leaves the others untouched. Under the default
//! [`VarianceAllocation::EqualSplit`] the per-coordinate variance is
//! `sigma2_total / d`, so the expected squared jump length is `sigma2_total`
//! whatever `d` is.

use rand::seq::index;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// How the total variance budget maps to a per-coordinate variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum VarianceAllocation {
    /// `sigma2 = sigma2_total / d`.
    #[default]
    EqualSplit,
    /// Every active coordinate gets `sigma2_total`, regardless of `d`.
    PerCoordinate,
}

/// Distribution over the size-`d` subsets of coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetRule {
    /// Uniform over all `C(N, d)` subsets, redrawn every step.
    #[default]
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProposalPolicy {
    pub d: usize,
    pub sigma2_total: f64,
    #[serde(default)]
    pub allocation: VarianceAllocation,
    #[serde(default)]
    pub subset_rule: SubsetRule,
}

impl ProposalPolicy {
    /// Equal-split policy moving `d` coordinates per step.
    ///
    /// Panics unless `d >= 1` and `sigma2_total` is positive and finite.
    pub fn new(d: usize, sigma2_total: f64) -> Self {
        assert!(d >= 1, "a proposal must move at least one coordinate");
        assert!(
            sigma2_total > 0.0 && sigma2_total.is_finite(),
            "sigma2_total must be positive, got {sigma2_total}"
        );
        ProposalPolicy {
            d,
            sigma2_total,
            allocation: VarianceAllocation::EqualSplit,
            subset_rule: SubsetRule::Uniform,
        }
    }

    pub fn with_allocation(mut self, allocation: VarianceAllocation) -> Self {
        self.allocation = allocation;
        self
    }

    /// Variance of each active increment.
    pub fn per_coordinate_variance(&self) -> f64 {
        match self.allocation {
            VarianceAllocation::EqualSplit => self.sigma2_total / self.d as f64,
            VarianceAllocation::PerCoordinate => self.sigma2_total,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProposalOutcome {
    pub candidate: Vec<f64>,
    /// Sorted, zero-based indices of the moved coordinates.
    pub subset: Vec<usize>,
    /// `candidate[subset[k]] - x[subset[k]]`, in subset order.
    pub increments: Vec<f64>,
}

/// Draws the `d` coordinates to move, sorted ascending.
///
/// Panics if `policy.d > n`.
pub fn select_subset<R: Rng + ?Sized>(policy: &ProposalPolicy, n: usize, rng: &mut R) -> Vec<usize> {
    assert!(
        policy.d <= n,
        "cannot move {} of {} coordinates",
        policy.d,
        n
    );
    match policy.subset_rule {
        SubsetRule::Uniform => {
            let mut s = index::sample(rng, n, policy.d).into_vec();
            s.sort_unstable();
            s
        }
    }
}

pub fn propose<R: Rng + ?Sized>(policy: &ProposalPolicy, x: &[f64], rng: &mut R) -> ProposalOutcome {
    let subset = select_subset(policy, x.len(), rng);
    let sd = policy.per_coordinate_variance().sqrt();
    let mut candidate = x.to_vec();
    let increments: Vec<f64> = subset
        .iter()
        .map(|&i| {
            let z: f64 = rng.sample(StandardNormal);
            let delta = sd * z;
            candidate[i] = x[i] + delta;
            delta
        })
        .collect();
    ProposalOutcome {
        candidate,
        subset,
        increments,
    }
}

/// `E ||y - x||^2` for one proposal.
pub fn expected_squared_displacement(policy: &ProposalPolicy) -> f64 {
    policy.d as f64 * policy.per_coordinate_variance()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn full_subset_when_d_equals_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = ProposalPolicy::new(5, 1.0);
        assert_eq!(select_subset(&p, 5, &mut rng), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    #[should_panic(expected = "cannot move 4 of 3")]
    fn oversized_subset_panics() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        select_subset(&ProposalPolicy::new(4, 1.0), 3, &mut rng);
    }

    #[test]
    fn same_seed_same_subset() {
        let p = ProposalPolicy::new(3, 1.0);
        let a = select_subset(&p, 20, &mut ChaCha8Rng::seed_from_u64(9));
        let b = select_subset(&p, 20, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
    }

    #[test]
    fn single_index_frequencies_are_uniform() {
        let p = ProposalPolicy::new(1, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let draws = 30_000;
        let mut counts = [0usize; 3];
        for _ in 0..draws {
            counts[select_subset(&p, 3, &mut rng)[0]] += 1;
        }
        let expected = draws as f64 / 3.0;
        let sd = (draws as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for c in counts {
            assert!((c as f64 - expected).abs() <= 3.0 * sd, "{counts:?}");
        }
    }

    #[test]
    fn only_subset_coordinates_move() {
        let p = ProposalPolicy::new(2, 0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = [0.1, -0.4, 2.0, 3.5, -1.0, 0.0];
        for _ in 0..200 {
            let out = propose(&p, &x, &mut rng);
            let unchanged = x
                .iter()
                .zip(&out.candidate)
                .filter(|(a, b)| a.to_bits() == b.to_bits())
                .count();
            assert_eq!(unchanged, 4);
            for (k, &i) in out.subset.iter().enumerate() {
                assert_eq!(out.candidate[i], x[i] + out.increments[k]);
            }
        }
    }

    #[test]
    fn displacement_budget_is_independent_of_d() {
        for d in [1, 7, 30] {
            let p = ProposalPolicy::new(d, 0.37);
            assert!((expected_squared_displacement(&p) - 0.37).abs() < 1e-15);
        }
        let p = ProposalPolicy::new(4, 0.1).with_allocation(VarianceAllocation::PerCoordinate);
        assert!((expected_squared_displacement(&p) - 0.4).abs() < 1e-15);
    }
}
