//! Acceptance-rate theory for partial-coordinate proposals.
//!
//! Near `x`, a proposal `y = x + xi` moving the coordinates in `S` gives the
//! log acceptance ratio
//!
//! ```text
//! Z = -(g_S . xi + 1/2 xi^T H_SS xi) / T,    xi ~ N(0, sigma2 I_d)
//! ```
//!
//! to second order. `Z` is a linear-plus-quadratic form in a Gaussian vector,
//! whose cumulants have exact closed forms:
//!
//! ```text
//! kappa1 = -sigma2 tr(H) / (2T)
//! kappa2 =  sigma2 |g|^2 / T^2 + sigma2^2 tr(H^2) / (2 T^2)
//! kappa3 = -3 sigma2^2 g^T H g / T^3 - sigma2^3 tr(H^3) / T^3
//! ```
//!
//! (all restricted to `S`). [`acceptance_gaussian`] and
//! [`acceptance_edgeworth`] turn a cumulant triple into a predicted
//! `E[min(1, e^Z)]`.

mod acceptance;
mod predict;

pub use acceptance::{acceptance_edgeworth, acceptance_gaussian, normal_cdf, normal_pdf, EdgeworthAcceptance};
pub use predict::{predict_vs_empirical, PredictionReport};

use itertools::Itertools;
use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::objectives::Objective;
use crate::proposal::{select_subset, ProposalPolicy};

/// Subset averages are enumerated exactly up to this many subsets.
pub const MAX_ENUMERATED_SUBSETS: u64 = 10_000;
/// Subsets drawn when enumeration is too large.
pub const SAMPLED_SUBSETS: usize = 1_000;

/// First three cumulants of the log acceptance ratio.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CumulantTriple {
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
}

/// Gradient and Hessian restricted to one coordinate subset.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalModel {
    pub gradient_sub: Vec<f64>,
    pub hessian_sub: DMatrix<f64>,
    pub temperature: f64,
    /// Per-coordinate proposal variance.
    pub sigma2: f64,
}

impl LocalModel {
    pub fn new(gradient_sub: Vec<f64>, hessian_sub: DMatrix<f64>, temperature: f64, sigma2: f64) -> Self {
        let d = gradient_sub.len();
        assert_eq!(hessian_sub.shape(), (d, d), "Hessian block must be {d}x{d}");
        assert!(temperature > 0.0, "temperature must be positive");
        assert!(sigma2 > 0.0, "sigma2 must be positive");
        LocalModel {
            gradient_sub,
            hessian_sub,
            temperature,
            sigma2,
        }
    }

    /// Restricts a full gradient/Hessian pair to `subset`.
    pub fn restrict(gradient: &[f64], hessian: &DMatrix<f64>, subset: &[usize], temperature: f64, sigma2: f64) -> Self {
        let g = subset.iter().map(|&i| gradient[i]).collect();
        let h = DMatrix::from_fn(subset.len(), subset.len(), |a, b| hessian[(subset[a], subset[b])]);
        Self::new(g, h, temperature, sigma2)
    }
}

/// Exact cumulants of `Z` for one fixed subset under the quadratic model.
pub fn cumulants_fixed_subset(model: &LocalModel) -> CumulantTriple {
    let t = model.temperature;
    let s2 = model.sigma2;
    let g = nalgebra::DVector::from_column_slice(&model.gradient_sub);
    let h = &model.hessian_sub;

    let g_sq = g.norm_squared();
    let trace_h = h.trace();
    let h2 = h * h;
    let trace_h2 = h2.trace();
    let trace_h3 = h2.component_mul(&h.transpose()).sum();
    let g_h_g = g.dot(&(h * &g));

    CumulantTriple {
        kappa1: -s2 * trace_h / (2.0 * t),
        kappa2: s2 * g_sq / (t * t) + s2 * s2 * trace_h2 / (2.0 * t * t),
        kappa3: -(3.0 * s2 * s2 * g_h_g + s2 * s2 * s2 * trace_h3) / (t * t * t),
    }
}

/// The subsets over which an average is taken.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetPlan {
    pub subsets: Vec<Vec<usize>>,
    /// All `C(n, d)` subsets are present (otherwise a uniform sample).
    pub exact: bool,
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

impl SubsetPlan {
    pub fn new<R: Rng + ?Sized>(policy: &ProposalPolicy, n: usize, rng: &mut R) -> Self {
        assert!(policy.d <= n, "cannot move {} of {} coordinates", policy.d, n);
        if binomial(n, policy.d) <= MAX_ENUMERATED_SUBSETS {
            SubsetPlan {
                subsets: (0..n).combinations(policy.d).collect(),
                exact: true,
            }
        } else {
            SubsetPlan {
                subsets: (0..SAMPLED_SUBSETS)
                    .map(|_| select_subset(policy, n, rng))
                    .collect(),
                exact: false,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetAverage {
    pub mean: CumulantTriple,
    /// Monte-Carlo standard error of each component; `None` when exact.
    pub std_error: Option<CumulantTriple>,
    pub subsets: usize,
    pub exact: bool,
}

/// Cumulants averaged over the policy's subset distribution, exactly when
/// `C(N, d) <= 10^4` and from 1000 sampled subsets otherwise.
pub fn cumulants_subset_averaged<O, R>(
    objective: &O,
    x: &[f64],
    policy: &ProposalPolicy,
    temperature: f64,
    rng: &mut R,
) -> SubsetAverage
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let plan = SubsetPlan::new(policy, objective.dimension(), rng);
    let gradient = objective.gradient(x);
    let hessian = objective.hessian(x);
    let sigma2 = policy.per_coordinate_variance();
    let per_subset: Vec<CumulantTriple> = plan
        .subsets
        .iter()
        .map(|s| cumulants_fixed_subset(&LocalModel::restrict(&gradient, &hessian, s, temperature, sigma2)))
        .collect();
    average_triples(&per_subset, plan.exact)
}

pub(crate) fn average_triples(values: &[CumulantTriple], exact: bool) -> SubsetAverage {
    let n = values.len() as f64;
    let mean_of = |f: fn(&CumulantTriple) -> f64| values.iter().map(f).sum::<f64>() / n;
    let mean = CumulantTriple {
        kappa1: mean_of(|c| c.kappa1),
        kappa2: mean_of(|c| c.kappa2),
        kappa3: mean_of(|c| c.kappa3),
    };
    let std_error = (!exact && values.len() > 1).then(|| {
        let se = |f: fn(&CumulantTriple) -> f64, m: f64| {
            let var = values.iter().map(|c| (f(c) - m).powi(2)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        };
        CumulantTriple {
            kappa1: se(|c| c.kappa1, mean.kappa1),
            kappa2: se(|c| c.kappa2, mean.kappa2),
            kappa3: se(|c| c.kappa3, mean.kappa3),
        }
    });
    SubsetAverage {
        mean,
        std_error,
        subsets: values.len(),
        exact,
    }
}
