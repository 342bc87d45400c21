use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use super::CumulantTriple;

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_67;

pub fn normal_pdf(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// `Phi(-u) / phi(u)` for `u >= 0`.
fn mills_ratio(u: f64) -> f64 {
    if u < 37.0 {
        normal_cdf(-u) / normal_pdf(u)
    } else {
        let u2 = u * u;
        (1.0 - 1.0 / u2 + 3.0 / (u2 * u2) - 15.0 / (u2 * u2 * u2)) / u
    }
}

/// `E[e^Z ; Z < 0]` for `Z ~ N(m, s^2)`, i.e. `exp(m + s^2/2) Phi(-(m + s^2)/s)`,
/// evaluated without overflow.
fn lower_tail_term(m: f64, s: f64) -> f64 {
    let u = (m + s * s) / s;
    if u <= 0.0 {
        (m + 0.5 * s * s).exp() * normal_cdf(-u)
    } else {
        // exp(m + s^2/2 - u^2/2) == exp(-m^2 / (2 s^2))
        normal_pdf(m / s) * mills_ratio(u)
    }
}

/// `E[min(1, e^Z)]` for `Z ~ N(kappa1, kappa2)`:
/// `Phi(k1 / sqrt(k2)) + exp(k1 + k2/2) Phi(-(k1 + k2) / sqrt(k2))`.
///
/// Panics if `kappa2 < 0`. With `kappa2 == 0`, returns `min(1, e^kappa1)`.
pub fn acceptance_gaussian(c: &CumulantTriple) -> f64 {
    assert!(c.kappa2 >= 0.0, "kappa2 must be nonnegative, got {}", c.kappa2);
    if c.kappa2 == 0.0 {
        return c.kappa1.min(0.0).exp();
    }
    let s = c.kappa2.sqrt();
    let m = c.kappa1;
    (normal_cdf(m / s) + lower_tail_term(m, s)).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeworthAcceptance {
    /// `raw` clamped to `[0, 1]`.
    pub value: f64,
    pub raw: f64,
    /// The truncated expansion produced a value outside `[0, 1]`.
    pub clamped: bool,
}

/// `E[min(1, e^Z)]` under the one-term Edgeworth density
/// `phi(w) (1 + kappa3 / (6 kappa2^(3/2)) He3(w)) / sqrt(kappa2)`, `w = (z - k1)/sqrt(k2)`.
///
/// The skewness correction integrates in closed form to
/// `kappa3 / 6 * [exp(k1 + k2/2) Phi(-(k1 + k2)/s) - phi(k1/s) (s - k1/s) / s^2]`.
///
/// Panics unless `kappa2 > 0`.
pub fn acceptance_edgeworth(c: &CumulantTriple) -> EdgeworthAcceptance {
    assert!(c.kappa2 > 0.0, "kappa2 must be positive, got {}", c.kappa2);
    let s = c.kappa2.sqrt();
    let m = c.kappa1;
    let tail = lower_tail_term(m, s);
    let gaussian = normal_cdf(m / s) + tail;
    let correction = c.kappa3 / 6.0 * (tail - normal_pdf(m / s) * (s - m / s) / c.kappa2);
    let raw = gaussian + correction;
    let value = raw.clamp(0.0, 1.0);
    EdgeworthAcceptance {
        value,
        raw,
        clamped: value != raw,
    }
}
