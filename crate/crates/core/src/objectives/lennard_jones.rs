use nalgebra::DMatrix;
use rand::{Rng, RngCore};

use super::{check_dimension, DomainBox, Objective, ReferenceTable};
use crate::error::{Error, Result};

/// Insertion attempts per particle before initialization gives up.
const PLACEMENT_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LennardJonesParams {
    pub particle_count: usize,
    /// Well depth.
    pub epsilon: f64,
    /// Distance at which the pair potential crosses zero.
    pub sigma: f64,
    /// Pairs closer than this contribute the energy evaluated at this
    /// distance, with zero gradient and Hessian.
    pub overlap_floor: f64,
}

impl LennardJonesParams {
    /// Reduced units (`epsilon = sigma = 1`) with an overlap floor of `0.4 sigma`.
    pub fn reduced(particle_count: usize) -> Self {
        LennardJonesParams {
            particle_count,
            epsilon: 1.0,
            sigma: 1.0,
            overlap_floor: 0.4,
        }
    }
}

/// Lennard-Jones cluster of `particle_count` atoms in three dimensions; the
/// coordinate vector is `[x0, y0, z0, x1, y1, z1, ...]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LennardJones {
    params: LennardJonesParams,
    reference: Option<f64>,
}

impl LennardJones {
    /// Builds the cluster with its reference minimum from the bundled
    /// reduced-units table, scaled by `epsilon`.
    pub fn new(params: LennardJonesParams) -> Result<Self> {
        let bundled = ReferenceTable::bundled()
            .lennard_jones(params.particle_count)
            .map(|e| e * params.epsilon);
        Self::with_reference(params, bundled)
    }

    pub fn with_reference(params: LennardJonesParams, reference: Option<f64>) -> Result<Self> {
        if params.particle_count < 2 {
            return Err(Error::config(
                "particle_count",
                format!("need at least 2 particles, got {}", params.particle_count),
            ));
        }
        for (field, v) in [
            ("epsilon", params.epsilon),
            ("sigma", params.sigma),
            ("overlap_floor", params.overlap_floor),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::config(field, format!("must be positive, got {v}")));
            }
        }
        Ok(LennardJones { params, reference })
    }

    pub fn params(&self) -> &LennardJonesParams {
        &self.params
    }

    pub fn particle_count(&self) -> usize {
        self.params.particle_count
    }

    fn box_side(&self) -> f64 {
        1.2 * (self.params.particle_count as f64).cbrt() * self.params.sigma
    }

    /// Pair energy, first and second radial derivatives at distance `r`.
    fn pair(&self, r: f64) -> (f64, f64, f64) {
        let LennardJonesParams {
            epsilon,
            sigma,
            overlap_floor,
            ..
        } = self.params;
        let capped = r < overlap_floor;
        let r = if capped { overlap_floor } else { r };
        let s6 = (sigma / r).powi(6);
        let s12 = s6 * s6;
        let energy = 4.0 * epsilon * (s12 - s6);
        if capped {
            return (energy, 0.0, 0.0);
        }
        let d1 = 4.0 * epsilon * (-12.0 * s12 + 6.0 * s6) / r;
        let d2 = 4.0 * epsilon * (156.0 * s12 - 42.0 * s6) / (r * r);
        (energy, d1, d2)
    }

    fn separation(x: &[f64], i: usize, j: usize) -> ([f64; 3], f64) {
        let d = [
            x[3 * i] - x[3 * j],
            x[3 * i + 1] - x[3 * j + 1],
            x[3 * i + 2] - x[3 * j + 2],
        ];
        let r = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        (d, r)
    }

    /// Smallest pair distance in the configuration.
    pub fn min_pair_distance(&self, x: &[f64]) -> f64 {
        check_dimension(self.dimension(), x);
        let n = self.params.particle_count;
        let mut best = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                best = best.min(Self::separation(x, i, j).1);
            }
        }
        best
    }
}

impl Objective for LennardJones {
    fn name(&self) -> &str {
        "lennard-jones"
    }

    fn dimension(&self) -> usize {
        3 * self.params.particle_count
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        check_dimension(self.dimension(), x);
        let n = self.params.particle_count;
        let mut total = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                total += self.pair(Self::separation(x, i, j).1).0;
            }
        }
        total
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        check_dimension(self.dimension(), x);
        let n = self.params.particle_count;
        let mut g = vec![0.0; 3 * n];
        for i in 0..n {
            for j in i + 1..n {
                let (d, r) = Self::separation(x, i, j);
                let (_, d1, _) = self.pair(r);
                if d1 == 0.0 {
                    continue;
                }
                for a in 0..3 {
                    let c = d1 * d[a] / r;
                    g[3 * i + a] += c;
                    g[3 * j + a] -= c;
                }
            }
        }
        g
    }

    fn hessian(&self, x: &[f64]) -> DMatrix<f64> {
        check_dimension(self.dimension(), x);
        let n = self.params.particle_count;
        let mut h = DMatrix::zeros(3 * n, 3 * n);
        for i in 0..n {
            for j in i + 1..n {
                let (d, r) = Self::separation(x, i, j);
                let (_, d1, d2) = self.pair(r);
                if d1 == 0.0 && d2 == 0.0 {
                    continue;
                }
                let u = [d[0] / r, d[1] / r, d[2] / r];
                for a in 0..3 {
                    for b in 0..3 {
                        let delta = if a == b { 1.0 } else { 0.0 };
                        let k = d2 * u[a] * u[b] + d1 / r * (delta - u[a] * u[b]);
                        h[(3 * i + a, 3 * i + b)] += k;
                        h[(3 * j + a, 3 * j + b)] += k;
                        h[(3 * i + a, 3 * j + b)] -= k;
                        h[(3 * j + a, 3 * i + b)] -= k;
                    }
                }
            }
        }
        h
    }

    /// Cube of side `1.2 n^(1/3) sigma` centred on the origin.
    fn domain_box(&self) -> DomainBox {
        let half = 0.5 * self.box_side();
        DomainBox::uniform(self.dimension(), -half, half)
    }

    fn known_minimum(&self) -> Option<f64> {
        self.reference
    }

    /// Sequential insertion: each particle is redrawn uniformly in the cube
    /// until it sits at least `overlap_floor` from every particle already placed.
    fn random_initial_state(&self, rng: &mut dyn RngCore) -> Result<Vec<f64>> {
        let n = self.params.particle_count;
        let half = 0.5 * self.box_side();
        let floor2 = self.params.overlap_floor * self.params.overlap_floor;
        let mut x = Vec::with_capacity(3 * n);
        for placed in 0..n {
            let mut attempts = 0;
            loop {
                if attempts == PLACEMENT_ATTEMPTS {
                    return Err(Error::Initialization {
                        requested: n,
                        placed,
                        attempts,
                    });
                }
                attempts += 1;
                let p: [f64; 3] = std::array::from_fn(|_| rng.random_range(-half..=half));
                let clear = x.chunks_exact(3).all(|q: &[f64]| {
                    let d2: f64 = (0..3).map(|a| (p[a] - q[a]).powi(2)).sum();
                    d2 >= floor2
                });
                if clear {
                    x.extend_from_slice(&p);
                    break;
                }
            }
        }
        Ok(x)
    }
}
