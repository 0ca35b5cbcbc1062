//! Cross-module invariant suite run by `lebesgue check`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{collocation_residual, markov_witness, CollocationProblem};
use crate::error::{Error, Result};
use crate::interp::barycentric_weights;
use crate::jacobi::{eval_unchecked, JacobiParams, MAX_DEGREE};
use crate::lebesgue::{erdos_lower_bound, lebesgue_constant};
use crate::nodes::{
    build_point_set, jacobi_zeros, radau_interlacing_margin, zero_angle_diagnostics, NodeSet,
    PointSetFamily,
};

/// Points in the uniform grid used for the polynomial value bounds.
pub const VALUE_GRID_POINTS: usize = 10_001;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckOptions {
    pub max_n: usize,
    /// Fault injection: shifts the smallest Radau zero by this amount.
    pub tamper: Option<f64>,
    pub seed: u64,
}

impl CheckOptions {
    pub fn new(max_n: usize) -> Self {
        CheckOptions { max_n, tamper: None, seed: 0x5eed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Smallest slack seen; negative when the check failed.
    pub worst_margin: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub max_n: usize,
    pub outcomes: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|c| c.passed)
    }
}

struct Tracker {
    worst: f64,
    at: String,
}

impl Tracker {
    fn new() -> Self {
        Tracker { worst: f64::INFINITY, at: String::new() }
    }

    fn see(&mut self, margin: f64, at: impl FnOnce() -> String) {
        if margin < self.worst {
            self.worst = margin;
            self.at = at();
        }
    }

    fn finish(self, name: &'static str) -> CheckOutcome {
        CheckOutcome {
            name,
            passed: self.worst > 0.0,
            worst_margin: self.worst,
            detail: self.at,
        }
    }
}

fn value_grid() -> impl Iterator<Item = f64> {
    let m = (VALUE_GRID_POINTS - 1) as f64;
    (0..VALUE_GRID_POINTS).map(move |k| -1.0 + 2.0 * k as f64 / m)
}

/// Runs every check for `2 ≤ N ≤ max_n`.
pub fn run_checks(opts: &CheckOptions) -> Result<CheckReport> {
    if opts.max_n < 2 || opts.max_n > MAX_DEGREE {
        return Err(Error::domain(format!("max_n must be in 2..={MAX_DEGREE}, got {}", opts.max_n)));
    }
    let outcomes = vec![
        flip_identity(opts),
        legendre_sup(opts),
        radau_values(opts),
        legendre_angles(opts)?,
        radau_zero_bounds(opts)?,
        interlacing(opts)?,
        markov(opts),
        erdos_floor(opts)?,
        residual(opts)?,
    ];
    Ok(CheckReport { max_n: opts.max_n, outcomes })
}

fn flip_identity(opts: &CheckOptions) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut t = Tracker::new();
    for _ in 0..16 {
        let a: f64 = rng.gen_range(-0.999..=2.0);
        let b: f64 = rng.gen_range(-0.999..=2.0);
        for n in 0..=opts.max_n.min(50) {
            for k in 0..=100 {
                let tau = -1.0 + 0.02 * k as f64;
                let p = eval_unchecked(a, b, n, tau);
                let q = eval_unchecked(b, a, n, -tau);
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let margin = 1e-11 * p.abs().max(1.0) - (p - sign * q).abs();
                t.see(margin, || format!("alpha={a:.3} beta={b:.3} n={n} tau={tau:.2}"));
            }
        }
    }
    t.finish("flip-identity")
}

fn legendre_sup(opts: &CheckOptions) -> CheckOutcome {
    let mut t = Tracker::new();
    for n in 0..=opts.max_n {
        let worst = value_grid().map(|x| eval_unchecked(0.0, 0.0, n, x).abs()).fold(0.0, f64::max);
        t.see(1.0 + 1e-12 - worst, || format!("n={n}"));
    }
    t.finish("legendre-sup-bound")
}

fn radau_values(opts: &CheckOptions) -> CheckOutcome {
    let mut t = Tracker::new();
    for n in 1..=opts.max_n {
        let nf = n as f64;
        let worst = value_grid().map(|x| eval_unchecked(1.0, 0.0, n - 1, x).abs()).fold(0.0, f64::max);
        t.see(nf + 1e-10 - worst, || format!("sup bound, N={n}"));
        let end = eval_unchecked(1.0, 0.0, n - 1, 1.0);
        t.see(1e-12 - ((end - nf) / nf).abs(), || format!("endpoint value, N={n}"));
    }
    t.finish("radau-value-bounds")
}

fn legendre_angles(opts: &CheckOptions) -> Result<CheckOutcome> {
    let mut t = Tracker::new();
    for n in 1..=opts.max_n {
        let report = zero_angle_diagnostics(&build_point_set(PointSetFamily::GaussLegendre, n)?)?;
        t.see(report.worst_margin(), || format!("N={n}"));
    }
    Ok(t.finish("legendre-zero-angles"))
}

fn tampered_radau(n: usize, tamper: Option<f64>) -> Result<Vec<f64>> {
    let mut zeros = jacobi_zeros(JacobiParams::RADAU, n - 1)?;
    if let Some(delta) = tamper {
        zeros[0] += delta;
    }
    Ok(zeros)
}

fn radau_zero_bounds(opts: &CheckOptions) -> Result<CheckOutcome> {
    let mut t = Tracker::new();
    for n in 2..=opts.max_n {
        let mut nodes = tampered_radau(n, opts.tamper)?;
        nodes.push(1.0);
        let set = match NodeSet::explicit(nodes) {
            Ok(s) => s,
            Err(_) => {
                t.see(-1.0, || format!("N={n}: tampered nodes are not increasing"));
                continue;
            }
        };
        let set = set.relabel(PointSetFamily::RadauRight, n);
        let report = zero_angle_diagnostics(&set)?;
        for c in &report.checks {
            t.see(c.margin, || format!("N={n} {:?} i={}", c.kind, c.index));
        }
    }
    Ok(t.finish("radau-zero-bounds"))
}

fn interlacing(opts: &CheckOptions) -> Result<CheckOutcome> {
    let mut t = Tracker::new();
    for n in 2..=opts.max_n {
        let zeros = tampered_radau(n, opts.tamper)?;
        let margin = radau_interlacing_margin(n, Some(&zeros))?;
        t.see(margin, || format!("N={n}"));
    }
    Ok(t.finish("interlacing"))
}

fn markov(opts: &CheckOptions) -> CheckOutcome {
    let mut t = Tracker::new();
    for degree in 1..=opts.max_n.min(30) {
        let r = markov_witness(degree, 500, opts.seed);
        let margin = if r.violations > 0 { -(r.violations as f64) } else { 1.0 + 1e-9 - r.worst_ratio };
        t.see(margin, || format!("degree {degree}: {} violations", r.violations));
    }
    t.finish("markov-witness")
}

fn erdos_floor(opts: &CheckOptions) -> Result<CheckOutcome> {
    let mut t = Tracker::new();
    for family in PointSetFamily::BUILDABLE {
        for n in 2..=opts.max_n.min(100) {
            let set = build_point_set(family, n)?;
            let lambda = lebesgue_constant(&barycentric_weights(set.nodes())?)?.constant;
            t.see(lambda - erdos_lower_bound(set.len()) + 1e-6, || format!("{family} N={n}"));
        }
    }
    Ok(t.finish("erdos-floor"))
}

fn residual(opts: &CheckOptions) -> Result<CheckOutcome> {
    let problem = CollocationProblem::by_name("exp")?;
    let n = opts.max_n.min(15);
    let r = collocation_residual(&problem, PointSetFamily::GaussPlusLeftEnd, n)?;
    let mut t = Tracker::new();
    let tol = if n >= 15 { 1e-10 } else { 1e-2 };
    t.see(tol - r.sup_norm, || format!("exp problem, gauss-plus-left, N={n}"));
    if r.r0 != 0.0 {
        t.see(-r.r0.abs(), || "boundary residual is not zero".into());
    }
    Ok(t.finish("collocation-residual"))
}
