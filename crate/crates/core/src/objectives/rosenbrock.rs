use nalgebra::DMatrix;

use super::{check_dimension, DomainBox, Objective};
use crate::error::{Error, Result};

/// Extended Rosenbrock function
/// `sum_{i<N-1} 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2`, minimum 0 at `(1, ..., 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rosenbrock {
    dimension: usize,
}

impl Rosenbrock {
    pub fn new(dimension: usize) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::config(
                "dimension",
                format!("Rosenbrock needs at least 2 coordinates, got {dimension}"),
            ));
        }
        Ok(Rosenbrock { dimension })
    }
}

impl Objective for Rosenbrock {
    fn name(&self) -> &str {
        "rosenbrock"
    }

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        check_dimension(self.dimension, x);
        x.windows(2)
            .map(|w| {
                let a = w[1] - w[0] * w[0];
                let b = 1.0 - w[0];
                100.0 * a * a + b * b
            })
            .sum()
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        check_dimension(self.dimension, x);
        let mut g = vec![0.0; self.dimension];
        for i in 0..self.dimension - 1 {
            let a = x[i + 1] - x[i] * x[i];
            g[i] += -400.0 * x[i] * a - 2.0 * (1.0 - x[i]);
            g[i + 1] += 200.0 * a;
        }
        g
    }

    fn hessian(&self, x: &[f64]) -> DMatrix<f64> {
        check_dimension(self.dimension, x);
        let n = self.dimension;
        let mut h = DMatrix::zeros(n, n);
        for i in 0..n - 1 {
            h[(i, i)] += 1200.0 * x[i] * x[i] - 400.0 * x[i + 1] + 2.0;
            h[(i + 1, i + 1)] += 200.0;
            let off = -400.0 * x[i];
            h[(i, i + 1)] += off;
            h[(i + 1, i)] += off;
        }
        h
    }

    fn domain_box(&self) -> DomainBox {
        DomainBox::uniform(self.dimension, -2.0, 2.0)
    }

    fn known_minimum(&self) -> Option<f64> {
        Some(0.0)
    }
}
