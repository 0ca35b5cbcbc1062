//! Lebesgue functions and constants.
//!
//! Between two consecutive nodes the Lebesgue function `λ(τ) = Σ_j |L_j(τ)|`
//! is a smooth polynomial piece, so its maximum over `[-1, 1]` is found
//! interval by interval: a coarse uniform profile locates each ascent and a
//! golden-section search refines it.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp::{BarycentricBasis, NODE_HIT_TOL};
use crate::jacobi::DOMAIN_SLACK;

/// Additive constant of the Erdős–Brutman lower bound.
pub const ERDOS_CONSTANT: f64 = 0.52125;

const GOLDEN: f64 = 0.618_033_988_749_894_9;
const MAX_GOLDEN_STEPS: usize = 200;

/// Tunables of [`lebesgue_constant_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchSettings {
    /// Uniform samples per interval (endpoints included).
    pub samples_per_interval: usize,
    /// Golden-section stopping width in `τ`.
    pub tolerance: f64,
}

impl Default for SearchSettings {
    fn default() -> Self {
        SearchSettings { samples_per_interval: 33, tolerance: 1e-9 }
    }
}

/// Largest value of the Lebesgue function on one search interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalMax {
    pub interval: usize,
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
    pub argmax: f64,
}

/// Outcome of a Lebesgue constant computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LebesgueReport {
    pub constant: f64,
    pub argmax_tau: f64,
    pub interval_maxima: Vec<IntervalMax>,
    pub grid_resolution: usize,
    pub refinement_tolerance: f64,
}

/// `λ(τ) = Σ_j |L_j(τ)|`; exactly 1 at the nodes.
pub fn lebesgue_function(basis: &BarycentricBasis, tau: f64) -> Result<f64> {
    if !tau.is_finite() || tau.abs() > 1.0 + DOMAIN_SLACK {
        return Err(Error::domain(format!("tau = {tau} lies outside [-1, 1]")));
    }
    Ok(lambda(basis, tau))
}

fn lambda(basis: &BarycentricBasis, tau: f64) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for (&t, &w) in basis.nodes().iter().zip(basis.weights()) {
        let d = tau - t;
        if d.abs() <= NODE_HIT_TOL {
            return 1.0;
        }
        let q = w / d;
        num += q.abs();
        den += q;
    }
    num / den.abs()
}

/// Lebesgue constant with the default search settings.
pub fn lebesgue_constant(basis: &BarycentricBasis) -> Result<LebesgueReport> {
    lebesgue_constant_with(basis, SearchSettings::default())
}

/// Maximizes `λ` over `[-1, 1]`.
///
/// The search intervals are the gaps between consecutive nodes, plus
/// `[-1, τ_min]` and `[τ_max, 1]` when the endpoints are not nodes.
pub fn lebesgue_constant_with(
    basis: &BarycentricBasis,
    settings: SearchSettings,
) -> Result<LebesgueReport> {
    if settings.samples_per_interval < 3 || settings.tolerance.is_nan() || settings.tolerance <= 0.0 {
        return Err(Error::domain("search needs at least 3 samples and a positive tolerance"));
    }
    let nodes = basis.nodes();
    let mut breaks = Vec::with_capacity(nodes.len() + 2);
    if nodes[0] > -1.0 {
        breaks.push(-1.0);
    }
    breaks.extend_from_slice(nodes);
    if nodes[nodes.len() - 1] < 1.0 {
        breaks.push(1.0);
    }

    let mut interval_maxima = Vec::with_capacity(breaks.len());
    for (interval, w) in breaks.windows(2).enumerate() {
        interval_maxima.push(interval_max(basis, interval, w[0], w[1], settings)?);
    }

    let (constant, argmax_tau) = interval_maxima
        .iter()
        .map(|m| (m.value, m.argmax))
        .fold((1.0, nodes[0]), |best, cand| if cand.0 > best.0 { cand } else { best });

    Ok(LebesgueReport {
        constant,
        argmax_tau,
        interval_maxima,
        grid_resolution: settings.samples_per_interval,
        refinement_tolerance: settings.tolerance,
    })
}

fn interval_max(
    basis: &BarycentricBasis,
    interval: usize,
    lo: f64,
    hi: f64,
    settings: SearchSettings,
) -> Result<IntervalMax> {
    let m = settings.samples_per_interval - 1;
    let taus: Vec<f64> = (0..=m)
        .map(|k| match k {
            0 => lo,
            k if k == m => hi,
            k => lo + (hi - lo) * k as f64 / m as f64,
        })
        .collect();
    let values: Vec<f64> = taus.iter().map(|&t| lambda(basis, t)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::SearchNotConverged { interval, lo, hi });
    }

    let mut best = IntervalMax { interval, lo, hi, value: values[0], argmax: lo };
    if values[m] > best.value {
        best.value = values[m];
        best.argmax = hi;
    }
    // Every interior sample that is a local peak of the profile gets refined.
    for k in 1..m {
        if values[k] >= values[k - 1] && values[k] >= values[k + 1] {
            let (t, v) = golden_max(basis, taus[k - 1], taus[k + 1], settings.tolerance)
                .ok_or(Error::SearchNotConverged { interval, lo, hi })?;
            let (t, v) = if values[k] > v { (taus[k], values[k]) } else { (t, v) };
            if v > best.value {
                best.value = v;
                best.argmax = t;
            }
        }
    }
    Ok(best)
}

fn golden_max(basis: &BarycentricBasis, mut a: f64, mut b: f64, tol: f64) -> Option<(f64, f64)> {
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let mut fc = lambda(basis, c);
    let mut fd = lambda(basis, d);
    for _ in 0..MAX_GOLDEN_STEPS {
        if b - a <= tol {
            let t = 0.5 * (a + b);
            let v = lambda(basis, t);
            let best = [(t, v), (c, fc), (d, fd)]
                .into_iter()
                .fold((t, v), |acc, x| if x.1 > acc.1 { x } else { acc });
            return best.1.is_finite().then_some(best);
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = lambda(basis, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = lambda(basis, d);
        }
    }
    None
}

/// `(2/π) ln(num_points) + 0.52125`, the universal floor on Lebesgue
/// constants of `num_points` interpolation points.
pub fn erdos_lower_bound(num_points: usize) -> f64 {
    2.0 / PI * (num_points.max(1) as f64).ln() + ERDOS_CONSTANT
}
