use nalgebra::DMatrix;

use super::{check_dimension, DomainBox, Objective};
use crate::error::{Error, Result};

/// Weighted sum of squares `sum_i a_i x_i^2` with all `a_i > 0`.
///
/// [`HyperEllipsoid::standard`] uses `a_i = N - i + 1` (one-based), which at
/// `N = 2` is `2x^2 + y^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperEllipsoid {
    coefficients: Vec<f64>,
}

impl HyperEllipsoid {
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::config("coefficients", "need at least one coefficient"));
        }
        if let Some(bad) = coefficients.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return Err(Error::config(
                "coefficients",
                format!("coefficients must be positive and finite, got {bad}"),
            ));
        }
        Ok(HyperEllipsoid { coefficients })
    }

    pub fn standard(dimension: usize) -> Result<Self> {
        Self::new((0..dimension).map(|i| (dimension - i) as f64).collect())
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }
}

impl Objective for HyperEllipsoid {
    fn name(&self) -> &str {
        "hyper-ellipsoid"
    }

    fn dimension(&self) -> usize {
        self.coefficients.len()
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        check_dimension(self.dimension(), x);
        self.coefficients.iter().zip(x).map(|(a, v)| a * v * v).sum()
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        check_dimension(self.dimension(), x);
        self.coefficients
            .iter()
            .zip(x)
            .map(|(a, v)| 2.0 * a * v)
            .collect()
    }

    fn hessian(&self, x: &[f64]) -> DMatrix<f64> {
        check_dimension(self.dimension(), x);
        let diag: Vec<f64> = self.coefficients.iter().map(|a| 2.0 * a).collect();
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
    }

    fn domain_box(&self) -> DomainBox {
        DomainBox::uniform(self.dimension(), -2.0, 2.0)
    }

    fn known_minimum(&self) -> Option<f64> {
        Some(0.0)
    }
}
