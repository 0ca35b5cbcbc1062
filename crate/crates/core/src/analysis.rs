//! Sweeps of Lebesgue constants, least-squares growth fits, best-approximation
//! bounds and the collocation residual experiment for `ẋ = f(x)`, `x(-1) = x₀`.

use std::f64::consts::{E, PI};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp::{barycentric_weights, differentiation_matrix, interpolate, BarycentricBasis};
use crate::jacobi::MAX_DEGREE;
use crate::lebesgue::lebesgue_constant;
use crate::nodes::{build_point_set, NodeSet, PointSetFamily};

/// Points per half of the sup-norm grid.
pub const SUP_GRID_POINTS: usize = 10_001;

/// Evaluation grid standing in for the sup-norm on `[-1, 1]`: 10,001 uniform
/// points followed by 10,001 Chebyshev extrema.
pub fn sup_norm_grid() -> Vec<f64> {
    let m = (SUP_GRID_POINTS - 1) as f64;
    let uniform = (0..SUP_GRID_POINTS).map(|k| -1.0 + 2.0 * k as f64 / m);
    let chebyshev = (0..SUP_GRID_POINTS).map(|k| -(PI * k as f64 / m).cos());
    uniform.chain(chebyshev).map(|t| t.clamp(-1.0, 1.0)).collect()
}

/// One row of a [`SweepTable`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub num_points: usize,
    pub lambda: f64,
    pub argmax_tau: f64,
}

/// Lebesgue constants of one family over a range of `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub family: PointSetFamily,
    pub rows: Vec<SweepRow>,
}

/// Lebesgue constant of `family` for every `N` in `n_lo..=n_hi`.
pub fn sweep_constants(family: PointSetFamily, n_lo: usize, n_hi: usize) -> Result<SweepTable> {
    if n_lo == 0 || n_lo > n_hi || n_hi > MAX_DEGREE {
        return Err(Error::domain(format!(
            "sweep range must satisfy 1 <= from <= to <= {MAX_DEGREE}, got {n_lo}..={n_hi}"
        )));
    }
    let rows = (n_lo..=n_hi)
        .map(|n| {
            sweep_row(family, n).map_err(|e| Error::AtN { n, source: Box::new(e) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { family, rows })
}

fn sweep_row(family: PointSetFamily, n: usize) -> Result<SweepRow> {
    let set = build_point_set(family, n)?;
    let report = lebesgue_constant(&barycentric_weights(set.nodes())?)?;
    Ok(SweepRow { n, num_points: set.len(), lambda: report.constant, argmax_tau: report.argmax_tau })
}

/// Growth model `Λ_N ≈ a·g(N) + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitModel {
    /// `g(N) = √N`
    SqrtAffine,
    /// `g(N) = ln N`
    LogAffine,
}

impl FitModel {
    pub fn basis(&self, n: f64) -> f64 {
        match self {
            FitModel::SqrtAffine => n.sqrt(),
            FitModel::LogAffine => n.ln(),
        }
    }
}

impl fmt::Display for FitModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitModel::SqrtAffine => "sqrt",
            FitModel::LogAffine => "log",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: FitModel,
    pub a: f64,
    pub b: f64,
    pub rms_residual: f64,
    /// `max_N |λ_N - a·g(N) - b| / λ_N`
    pub max_rel_deviation: f64,
    pub n_range: (usize, usize),
}

impl FitResult {
    pub fn predict(&self, n: f64) -> f64 {
        self.a * self.model.basis(n) + self.b
    }
}

/// Linear least squares in the basis `(g(N), 1)`.
pub fn fit_model(table: &SweepTable, model: FitModel) -> Result<FitResult> {
    let rows = &table.rows;
    if rows.len() < 3 {
        return Err(Error::domain(format!("a fit needs at least 3 rows, got {}", rows.len())));
    }
    let g: Vec<f64> = rows.iter().map(|r| model.basis(r.n as f64)).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.lambda).collect();
    let len = rows.len() as f64;
    let g_mean = g.iter().sum::<f64>() / len;
    let y_mean = y.iter().sum::<f64>() / len;
    let sxx: f64 = g.iter().map(|v| (v - g_mean).powi(2)).sum();
    if sxx.is_nan() || sxx <= 0.0 {
        return Err(Error::domain("degenerate fit: every row has the same N"));
    }
    let sxy: f64 = g.iter().zip(&y).map(|(u, v)| (u - g_mean) * (v - y_mean)).sum();
    let a = sxy / sxx;
    let b = y_mean - a * g_mean;
    let residuals: Vec<f64> = g.iter().zip(&y).map(|(u, v)| v - a * u - b).collect();
    let rms_residual = (residuals.iter().map(|r| r * r).sum::<f64>() / len).sqrt();
    let max_rel_deviation =
        residuals.iter().zip(&y).map(|(r, v)| (r / v).abs()).fold(0.0, f64::max);
    Ok(FitResult {
        model,
        a,
        b,
        rms_residual,
        max_rel_deviation,
        n_range: (rows[0].n, rows[rows.len() - 1].n),
    })
}

/// Jackson's estimate of the best uniform approximation error by degree-`n`
/// polynomials: `(12/(m+1)) (6e/n)^m ‖x^(m)‖`, valid for `n > m`.
pub fn jackson_bound(m: usize, n: usize, sup_mth_deriv: f64) -> Result<f64> {
    if n <= m {
        return Err(Error::domain(format!("Jackson's bound needs n > m, got n = {n}, m = {m}")));
    }
    if sup_mth_deriv.is_nan() || sup_mth_deriv < 0.0 {
        return Err(Error::domain("derivative norm must be nonnegative"));
    }
    Ok(12.0 / (m as f64 + 1.0) * (6.0 * E / n as f64).powi(m as i32) * sup_mth_deriv)
}

/// `(1 + 2N²)·best_err_xdot + N²(1 + Λ)·best_err_x`.
pub fn prop1_bound(n: usize, lambda: f64, best_err_x: f64, best_err_xdot: f64) -> f64 {
    let n2 = (n as f64).powi(2);
    (1.0 + 2.0 * n2) * best_err_xdot + n2 * (1.0 + lambda) * best_err_x
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Scalar autonomous initial value problem with a known closed-form solution.
#[derive(Clone)]
pub struct CollocationProblem {
    name: String,
    initial_value: f64,
    dynamics: ScalarFn,
    solution: ScalarFn,
    derivative: ScalarFn,
    derivative_sup: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
}

impl fmt::Debug for CollocationProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CollocationProblem")
            .field("name", &self.name)
            .field("initial_value", &self.initial_value)
            .finish_non_exhaustive()
    }
}

/// Names accepted by [`CollocationProblem::by_name`].
pub const PROBLEM_NAMES: [&str; 4] = ["linear", "exp", "riccati", "exp-shifted"];

impl CollocationProblem {
    /// `derivative_sup(m)` must return `sup_{[-1,1]} |x^(m)|`; it feeds the
    /// Jackson estimates.
    pub fn new(
        name: impl Into<String>,
        initial_value: f64,
        dynamics: impl Fn(f64) -> f64 + Send + Sync + 'static,
        solution: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative_sup: impl Fn(usize) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let p = CollocationProblem {
            name: name.into(),
            initial_value,
            dynamics: Arc::new(dynamics),
            solution: Arc::new(solution),
            derivative: Arc::new(derivative),
            derivative_sup: Arc::new(derivative_sup),
        };
        p.validate()?;
        Ok(p)
    }

    /// Checks `x(-1) = x₀` and `ẋ = f(x)` on a 101-point grid.
    fn validate(&self) -> Result<()> {
        if ((self.solution)(-1.0) - self.initial_value).abs() > 1e-12 {
            return Err(Error::domain(format!("{}: solution misses the initial value", self.name)));
        }
        for k in 0..=100 {
            let t = -1.0 + 0.02 * k as f64;
            let lhs = (self.derivative)(t);
            let rhs = (self.dynamics)((self.solution)(t));
            let gap = (lhs - rhs).abs();
            if gap.is_nan() || gap > 1e-10 {
                return Err(Error::domain(format!(
                    "{}: derivative and dynamics disagree at tau = {t}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// One of the built-in problems listed in [`PROBLEM_NAMES`].
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            // ẋ = 1, x(-1) = 1
            "linear" => Self::new(
                name,
                1.0,
                |_| 1.0,
                |t| t + 2.0,
                |_| 1.0,
                |m| match m {
                    0 => 3.0,
                    1 => 1.0,
                    _ => 0.0,
                },
            ),
            // ẋ = x, x(-1) = 1
            "exp" => Self::new(name, 1.0, |x| x, |t| (t + 1.0).exp(), |t| (t + 1.0).exp(), |_| E * E),
            // ẋ = x², x(-1) = 1/3
            "riccati" => Self::new(
                name,
                1.0 / 3.0,
                |x| x * x,
                |t| 1.0 / (2.0 - t),
                |t| 1.0 / ((2.0 - t) * (2.0 - t)),
                |m| (1..=m).map(|k| k as f64).product(),
            ),
            // ẋ = x, x(-1) = 1/e
            "exp-shifted" => Self::new(name, (-1.0f64).exp(), |x| x, f64::exp, f64::exp, |_| E),
            other => Err(Error::domain(format!(
                "unknown problem '{other}', expected one of {}",
                PROBLEM_NAMES.join(", ")
            ))),
        }
    }

    /// The three problems with smooth, non-polynomial solutions.
    pub fn smooth_suite() -> Vec<Self> {
        ["exp", "riccati", "exp-shifted"]
            .iter()
            .map(|n| Self::by_name(n).expect("built-in problem"))
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn initial_value(&self) -> f64 {
        self.initial_value
    }

    pub fn dynamics(&self, x: f64) -> f64 {
        (self.dynamics)(x)
    }

    pub fn solution(&self, tau: f64) -> f64 {
        (self.solution)(tau)
    }

    pub fn derivative(&self, tau: f64) -> f64 {
        (self.derivative)(tau)
    }

    pub fn derivative_sup(&self, m: usize) -> f64 {
        (self.derivative_sup)(m)
    }
}

/// Residual of the collocated equations for the interpolant of the exact solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub family: PointSetFamily,
    pub n: usize,
    /// `x^N(-1) - x₀`
    pub r0: f64,
    /// `ẋ^N(τ_k) - f(x^N(τ_k))` at the collocation points.
    pub r: Vec<f64>,
    pub sup_norm: f64,
}

/// Interpolant data for the exact solution on a point set.
struct Interpolant {
    set: NodeSet,
    basis: BarycentricBasis,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

fn finite(value: f64, what: &'static str, tau: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { what, tau })
    }
}

fn interpolate_solution(
    problem: &CollocationProblem,
    family: PointSetFamily,
    n: usize,
) -> Result<Interpolant> {
    let set = build_point_set(family, n)?;
    if set.len() < 2 {
        return Err(Error::domain("the residual needs a point set with at least two nodes"));
    }
    let basis = barycentric_weights(set.nodes())?;
    // x(-1) = x₀ holds exactly, so the boundary node carries x₀ itself.
    let values = set
        .nodes()
        .iter()
        .map(|&t| {
            if t == -1.0 {
                Ok(problem.initial_value())
            } else {
                finite(problem.solution(t), "solution", t)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let slopes = differentiation_matrix(&basis)?.apply(&values)?;
    Ok(Interpolant { set, basis, values, slopes })
}

/// Residual obtained by inserting the interpolant of the exact solution into
/// the collocated equations. An appended non-collocated endpoint contributes
/// only through `r0`.
pub fn collocation_residual(
    problem: &CollocationProblem,
    family: PointSetFamily,
    n: usize,
) -> Result<ResidualReport> {
    let it = interpolate_solution(problem, family, n)?;
    let r0 = interpolate(&it.basis, &it.values, -1.0)? - problem.initial_value();
    let r = it
        .set
        .collocation_indices()
        .into_iter()
        .map(|k| {
            let t = it.set.nodes()[k];
            finite(problem.dynamics(it.values[k]), "dynamics", t).map(|f| it.slopes[k] - f)
        })
        .collect::<Result<Vec<_>>>()?;
    let sup_norm = r.iter().fold(r0.abs(), |m, v| m.max(v.abs()));
    Ok(ResidualReport { family, n, r0, r, sup_norm })
}

/// Grid sup-norm of `ẋ - ẋ^N`.
///
/// `ẋ^N` has degree below the node count, so it is evaluated by interpolating
/// its nodal values `D·x`, which avoids differentiating the barycentric quotient.
pub fn interp_derivative_error(
    problem: &CollocationProblem,
    family: PointSetFamily,
    n: usize,
) -> Result<f64> {
    let it = interpolate_solution(problem, family, n)?;
    sup_norm_grid().into_iter().try_fold(0.0_f64, |worst, t| {
        let exact = finite(problem.derivative(t), "derivative", t)?;
        Ok(worst.max((exact - interpolate(&it.basis, &it.slopes, t)?).abs()))
    })
}

/// Smallest Jackson estimate over `m < degree` of the error of best
/// approximation of `x^(order)` by polynomials of the given degree.
fn best_approx_estimate(problem: &CollocationProblem, order: usize, degree: usize) -> f64 {
    // Approximating by the zero polynomial is always admissible.
    let trivial = problem.derivative_sup(order);
    (0..degree)
        .filter_map(|m| jackson_bound(m, degree, problem.derivative_sup(m + order)).ok())
        .fold(trivial, f64::min)
}

/// Both sides of the derivative-error bound for one problem and point set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prop1Check {
    /// Polynomial degree of the interpolant, one less than the node count.
    pub degree: usize,
    pub lambda: f64,
    pub best_err_x: f64,
    pub best_err_xdot: f64,
    pub error: f64,
    pub bound: f64,
}

impl Prop1Check {
    pub fn holds(&self) -> bool {
        self.error <= self.bound
    }
}

/// Compares `‖ẋ - ẋ^N‖` with the bound built from the Lebesgue constant and
/// Jackson estimates (`x` by degree `d`, `ẋ` by degree `d - 1`).
pub fn prop1_check(problem: &CollocationProblem, family: PointSetFamily, n: usize) -> Result<Prop1Check> {
    let set = build_point_set(family, n)?;
    let degree = set.len() - 1;
    if degree < 2 {
        return Err(Error::domain("the derivative bound needs at least three nodes"));
    }
    let lambda = lebesgue_constant(&barycentric_weights(set.nodes())?)?.constant;
    let best_err_x = best_approx_estimate(problem, 0, degree);
    let best_err_xdot = best_approx_estimate(problem, 1, degree - 1);
    let error = interp_derivative_error(problem, family, n)?;
    Ok(Prop1Check {
        degree,
        lambda,
        best_err_x,
        best_err_xdot,
        error,
        bound: prop1_bound(degree, lambda, best_err_x, best_err_xdot),
    })
}

/// Outcome of [`markov_witness`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarkovReport {
    pub degree: usize,
    pub trials: usize,
    pub violations: usize,
    /// Largest observed `‖p'‖ / (N² ‖p‖)` on the grid.
    pub worst_ratio: f64,
}

/// Draws `trials` polynomials of degree `degree` with monomial coefficients
/// uniform in `[-1, 1]` and tests `‖p'‖ ≤ N²‖p‖ (1 + 1e-9)` on the sup grid.
pub fn markov_witness(degree: usize, trials: usize, seed: u64) -> MarkovReport {
    let grid = sup_norm_grid();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ degree as u64);
    let n2 = (degree as f64).powi(2);
    let mut coeffs = vec![0.0; degree + 1];
    let (mut violations, mut worst_ratio) = (0, 0.0_f64);
    for _ in 0..trials {
        coeffs.iter_mut().for_each(|c| *c = rng.gen_range(-1.0..=1.0));
        let (mut p_max, mut dp_max) = (0.0_f64, 0.0_f64);
        for &t in &grid {
            // Horner for p and p' together.
            let (mut p, mut dp) = (coeffs[degree], 0.0);
            for &c in coeffs[..degree].iter().rev() {
                dp = dp * t + p;
                p = p * t + c;
            }
            p_max = p_max.max(p.abs());
            dp_max = dp_max.max(dp.abs());
        }
        if p_max > 0.0 {
            let ratio = dp_max / (n2 * p_max);
            worst_ratio = worst_ratio.max(ratio);
            if ratio > 1.0 + 1e-9 {
                violations += 1;
            }
        }
    }
    MarkovReport { degree, trials, violations, worst_ratio }
}
