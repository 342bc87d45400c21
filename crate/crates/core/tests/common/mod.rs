//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use pcsa::annealing::SeededRng;
use pcsa::chain::{mh_step, ChainState};
use pcsa::objectives::{DomainBox, Objective};
use pcsa::proposal::ProposalPolicy;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use statrs::distribution::{ChiSquared, ContinuousCDF};

// ---------- finite differences ----------

/// Fourth-order central difference of `g` along coordinate `i`.
fn central<F: Fn(&[f64]) -> f64>(g: &F, x: &[f64], i: usize, h: f64) -> f64 {
    let mut y = x.to_vec();
    let mut at = |t: f64| {
        y[i] = x[i] + t;
        g(&y)
    };
    let (p1, m1, p2, m2) = (at(h), at(-h), at(2.0 * h), at(-2.0 * h));
    (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h)
}

fn step(x: f64) -> f64 {
    1e-4 * x.abs().max(1.0)
}

pub fn fd_gradient(f: &dyn Objective, x: &[f64]) -> Vec<f64> {
    (0..x.len())
        .map(|i| central(&|y: &[f64]| f.evaluate(y), x, i, step(x[i])))
        .collect()
}

/// Differences of the analytic gradient, symmetrized.
pub fn fd_hessian(f: &dyn Objective, x: &[f64]) -> DMatrix<f64> {
    let n = x.len();
    let mut h = DMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            h[(i, j)] = central(&|y: &[f64]| f.gradient(y)[i], x, j, step(x[j]));
        }
    }
    (&h + h.transpose()) * 0.5
}

/// `max |a - b| / max(|a|, |b|, 1)`.
pub fn max_rel_error(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q).abs() / p.abs().max(q.abs()).max(1.0))
        .fold(0.0, f64::max)
}

/// Sequential insertion in a cube with a minimum pair distance, independent
/// of the library initializer.
pub fn spaced_cluster(n: usize, side: f64, min_dist: f64, rng: &mut impl Rng) -> Vec<f64> {
    let mut pts: Vec<[f64; 3]> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = [0; 3].map(|_| rng.random_range(-side / 2.0..side / 2.0));
        let ok = pts
            .iter()
            .all(|q| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt() >= min_dist);
        if ok {
            pts.push(p);
        }
    }
    pts.concat()
}

// ---------- quadrature ----------

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    s * h / 3.0
}

pub fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// `E[min(1, e^Z)]` for `Z` with density `(1 + k3/(6 s^3) He3(w)) phi(w) / s`,
/// `w = (z - m)/s`, by quadrature split at `z = 0`.
pub fn quadrature_acceptance(m: f64, v: f64, k3: f64) -> f64 {
    let s = v.sqrt();
    let density = |z: f64| {
        let w = (z - m) / s;
        (1.0 + k3 / (6.0 * s * s * s) * (w * w * w - 3.0 * w)) * std_normal_pdf(w) / s
    };
    let lo = m - 14.0 * s;
    let hi = m + 14.0 * s;
    let n = 200_000;
    let neg = if lo < 0.0 {
        simpson(|z| z.exp() * density(z), lo, hi.min(0.0), n)
    } else {
        0.0
    };
    let pos = if hi > 0.0 {
        simpson(density, lo.max(0.0), hi, n)
    } else {
        0.0
    };
    neg + pos
}

// ---------- moments ----------

/// Sample cumulants 1..3 with standard errors from the delta method
/// (`var(k2) ~ (m4 - m2^2)/n`, `var(k3) ~ (m6 - m3^2 - 6 m4 m2 + 9 m2^3)/n`).
pub struct SampleCumulants {
    pub k: [f64; 3],
    pub se: [f64; 3],
}

pub fn sample_cumulants(values: &[f64]) -> SampleCumulants {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let mut m = [0.0; 7];
    for v in values {
        let d = v - mean;
        let mut p = 1.0;
        for slot in m.iter_mut() {
            *slot += p;
            p *= d;
        }
    }
    for slot in m.iter_mut() {
        *slot /= n;
    }
    let (m2, m3, m4, m6) = (m[2], m[3], m[4], m[6]);
    SampleCumulants {
        k: [mean, m2, m3],
        se: [
            (m2 / n).sqrt(),
            ((m4 - m2 * m2) / n).sqrt(),
            ((m6 - m3 * m3 - 6.0 * m4 * m2 + 9.0 * m2 * m2 * m2) / n).sqrt(),
        ],
    }
}

/// Draws of `Z = -(g.xi + xi^T H xi / 2)/T`, `xi ~ N(0, s2 I)`.
pub fn quadratic_form_samples(g: &[f64], h: &DMatrix<f64>, t: f64, s2: f64, n: usize, rng: &mut impl Rng) -> Vec<f64> {
    let d = g.len();
    let sd = s2.sqrt();
    let mut xi = vec![0.0; d];
    (0..n)
        .map(|_| {
            for v in xi.iter_mut() {
                *v = sd * rng.sample::<f64, _>(StandardNormal);
            }
            let mut lin = 0.0;
            let mut quad = 0.0;
            for a in 0..d {
                lin += g[a] * xi[a];
                let mut row = 0.0;
                for b in 0..d {
                    row += h[(a, b)] * xi[b];
                }
                quad += xi[a] * row;
            }
            -(lin + 0.5 * quad) / t
        })
        .collect()
}

// ---------- test objectives ----------

/// `(x^2 - 1)^2` in one dimension.
pub struct DoubleWell;

impl DoubleWell {
    pub fn energy(x: f64) -> f64 {
        (x * x - 1.0).powi(2)
    }
}

impl Objective for DoubleWell {
    fn name(&self) -> &str {
        "double-well"
    }
    fn dimension(&self) -> usize {
        1
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        Self::energy(x[0])
    }
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        vec![4.0 * x[0] * (x[0] * x[0] - 1.0)]
    }
    fn hessian(&self, x: &[f64]) -> DMatrix<f64> {
        DMatrix::from_element(1, 1, 12.0 * x[0] * x[0] - 4.0)
    }
    fn domain_box(&self) -> DomainBox {
        DomainBox::uniform(1, -1.5, 1.5)
    }
    fn known_minimum(&self) -> Option<f64> {
        Some(0.0)
    }
}

// ---------- double-well chain ----------

pub const DW_TEMPERATURE: f64 = 0.5;
pub const DW_STEPS: usize = 1_000_000;
pub const DW_THIN: usize = 50;

pub fn double_well_chain(seed: u64) -> Vec<f64> {
    let mut rng = SeededRng::seed_from_u64(seed);
    let mut state = ChainState::new(&DoubleWell, vec![1.0], DW_TEMPERATURE);
    let policy = ProposalPolicy::new(1, 0.5);
    let mut xs = Vec::with_capacity(DW_STEPS);
    for _ in 0..DW_STEPS {
        mh_step(&mut state, &DoubleWell, &policy, &mut rng);
        xs.push(state.x[0]);
    }
    xs
}

/// Chi-square p-value of thinned samples against the Boltzmann density.
pub fn boltzmann_p_value(samples: &[f64], t: f64) -> f64 {
    let edges: Vec<f64> = (0..=16).map(|k| -1.6 + 0.2 * k as f64).collect();
    let weight = |x: f64| (-DoubleWell::energy(x) / t).exp();
    let z = simpson(weight, -4.0, 4.0, 400_000);
    let probs: Vec<f64> = (0..16)
        .map(|k| {
            let lo = if k == 0 { -4.0 } else { edges[k] };
            let hi = if k == 15 { 4.0 } else { edges[k + 1] };
            simpson(weight, lo, hi, 20_000) / z
        })
        .collect();
    let mut counts = [0usize; 16];
    for &x in samples {
        let k = (((x + 1.6) / 0.2).floor() as isize).clamp(0, 15) as usize;
        counts[k] += 1;
    }
    let n = samples.len() as f64;
    assert!(probs.iter().all(|p| p * n >= 5.0));
    let stat: f64 = counts
        .iter()
        .zip(&probs)
        .map(|(&c, p)| (c as f64 - n * p).powi(2) / (n * p))
        .sum();
    1.0 - ChiSquared::new(15.0).unwrap().cdf(stat)
}
