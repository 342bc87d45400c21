//! Objective functions: value, analytic gradient and Hessian, an initialization
//! box, and (when known) the global minimum value.
//!
//! Three benchmarks ship with the crate: Lennard-Jones clusters, the extended
//! Rosenbrock function and a weighted hyper-ellipsoid. [`Benchmark`] wraps all
//! three behind one enum so experiment configs can name them.

mod hyper_ellipsoid;
mod lennard_jones;
mod reference;
mod rosenbrock;

pub use hyper_ellipsoid::HyperEllipsoid;
pub use lennard_jones::{LennardJones, LennardJonesParams};
pub use reference::ReferenceTable;
pub use rosenbrock::Rosenbrock;

use nalgebra::DMatrix;
use rand::{Rng, RngCore};

use crate::error::Result;

/// Per-coordinate `[lower, upper]` bounds used to draw initial states.
///
/// Chains are free to leave the box once they start moving.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainBox {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl DomainBox {
    pub fn uniform(dimension: usize, lower: f64, upper: f64) -> Self {
        assert!(lower < upper, "empty domain box [{lower}, {upper}]");
        DomainBox {
            lower: vec![lower; dimension],
            upper: vec![upper; dimension],
        }
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| lo <= v && v <= hi)
    }

    pub fn sample(&self, rng: &mut dyn RngCore) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| rng.random_range(lo..=hi))
            .collect()
    }
}

/// Static description of an objective.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveSpec {
    pub name: String,
    pub dimension: usize,
    pub known_minimum_value: Option<f64>,
    pub domain_box: DomainBox,
}

/// A twice-differentiable function on `R^N` to be minimized.
///
/// Passing a point whose length differs from [`Objective::dimension`] is a
/// contract violation and panics.
pub trait Objective: Send + Sync {
    fn name(&self) -> &str;

    fn dimension(&self) -> usize;

    fn evaluate(&self, x: &[f64]) -> f64;

    fn gradient(&self, x: &[f64]) -> Vec<f64>;

    /// Full `N x N` symmetric matrix of second derivatives.
    fn hessian(&self, x: &[f64]) -> DMatrix<f64>;

    fn domain_box(&self) -> DomainBox;

    /// Global minimum value, if known. For Lennard-Jones clusters this comes
    /// from a reference table and may be absent.
    fn known_minimum(&self) -> Option<f64>;

    /// Draws a starting point inside [`Objective::domain_box`].
    fn random_initial_state(&self, rng: &mut dyn RngCore) -> Result<Vec<f64>> {
        Ok(self.domain_box().sample(rng))
    }

    fn spec(&self) -> ObjectiveSpec {
        ObjectiveSpec {
            name: self.name().to_owned(),
            dimension: self.dimension(),
            known_minimum_value: self.known_minimum(),
            domain_box: self.domain_box(),
        }
    }
}

/// Reference minimum used to turn a best value into an error metric.
pub fn reference_minimum(objective: &dyn Objective) -> Option<f64> {
    objective.known_minimum()
}

pub(crate) fn check_dimension(expected: usize, x: &[f64]) {
    assert_eq!(
        x.len(),
        expected,
        "point has {} coordinates, objective expects {}",
        x.len(),
        expected
    );
}

/// The benchmark objectives addressable from experiment configs.
#[derive(Debug, Clone)]
pub enum Benchmark {
    LennardJones(LennardJones),
    Rosenbrock(Rosenbrock),
    HyperEllipsoid(HyperEllipsoid),
}

impl Benchmark {
    fn inner(&self) -> &dyn Objective {
        match self {
            Benchmark::LennardJones(o) => o,
            Benchmark::Rosenbrock(o) => o,
            Benchmark::HyperEllipsoid(o) => o,
        }
    }
}

impl Objective for Benchmark {
    fn name(&self) -> &str {
        self.inner().name()
    }

    fn dimension(&self) -> usize {
        self.inner().dimension()
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        self.inner().evaluate(x)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        self.inner().gradient(x)
    }

    fn hessian(&self, x: &[f64]) -> DMatrix<f64> {
        self.inner().hessian(x)
    }

    fn domain_box(&self) -> DomainBox {
        self.inner().domain_box()
    }

    fn known_minimum(&self) -> Option<f64> {
        self.inner().known_minimum()
    }

    fn random_initial_state(&self, rng: &mut dyn RngCore) -> Result<Vec<f64>> {
        self.inner().random_initial_state(rng)
    }
}
