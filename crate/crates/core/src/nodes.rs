//! Zeros of Jacobi polynomials and the point-set families built from them.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::{eval_unchecked, eval_with_deriv, JacobiParams, MAX_DEGREE};

const NEWTON_TOL: f64 = 1e-15;
const MAX_ITERATIONS: usize = 50;

/// The named point sets. `N` below is the number of quadrature points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointSetFamily {
    /// The `N` zeros of the Legendre polynomial `P_N`.
    GaussLegendre,
    /// Legendre zeros together with `-1`.
    GaussPlusLeftEnd,
    /// Legendre zeros together with `+1`.
    GaussPlusRightEnd,
    /// The `N - 1` zeros of `P_{N-1}^(1,0)` together with `+1`.
    RadauRight,
    /// Negation of [`PointSetFamily::RadauRight`]; contains `-1`.
    RadauLeft,
    /// Radau points on `(-1, 1]` together with `-1`.
    RadauRightPlusLeftEnd,
    /// Radau points on `[-1, 1)` together with `+1`.
    RadauLeftPlusRightEnd,
    /// `N + 1` equally spaced points including both endpoints.
    Equidistant,
    /// A caller-supplied point set.
    Explicit,
}

impl PointSetFamily {
    /// Every family that [`build_point_set`] can construct.
    pub const BUILDABLE: [PointSetFamily; 8] = [
        PointSetFamily::GaussLegendre,
        PointSetFamily::GaussPlusLeftEnd,
        PointSetFamily::GaussPlusRightEnd,
        PointSetFamily::RadauRight,
        PointSetFamily::RadauLeft,
        PointSetFamily::RadauRightPlusLeftEnd,
        PointSetFamily::RadauLeftPlusRightEnd,
        PointSetFamily::Equidistant,
    ];

    /// Short name used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            PointSetFamily::GaussLegendre => "gauss",
            PointSetFamily::GaussPlusLeftEnd => "gauss-plus-left",
            PointSetFamily::GaussPlusRightEnd => "gauss-plus-right",
            PointSetFamily::RadauRight => "radau-right",
            PointSetFamily::RadauLeft => "radau-left",
            PointSetFamily::RadauRightPlusLeftEnd => "radau-right-plus-left",
            PointSetFamily::RadauLeftPlusRightEnd => "radau-left-plus-right",
            PointSetFamily::Equidistant => "equidistant",
            PointSetFamily::Explicit => "explicit",
        }
    }

    /// Number of points in the set built for `n_quadrature` quadrature points.
    pub fn num_points(&self, n_quadrature: usize) -> usize {
        match self {
            PointSetFamily::GaussLegendre
            | PointSetFamily::RadauRight
            | PointSetFamily::RadauLeft
            | PointSetFamily::Explicit => n_quadrature,
            _ => n_quadrature + 1,
        }
    }

    /// The endpoint appended to a quadrature set that is not a collocation point.
    pub fn augmented_endpoint(&self) -> Option<f64> {
        match self {
            PointSetFamily::GaussPlusLeftEnd | PointSetFamily::RadauRightPlusLeftEnd => Some(-1.0),
            PointSetFamily::GaussPlusRightEnd | PointSetFamily::RadauLeftPlusRightEnd => Some(1.0),
            _ => None,
        }
    }
}

impl fmt::Display for PointSetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PointSetFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PointSetFamily::BUILDABLE
            .iter()
            .chain(std::iter::once(&PointSetFamily::Explicit))
            .find(|f| f.name() == s)
            .copied()
            .ok_or_else(|| Error::domain(format!("unknown point-set family '{s}'")))
    }
}

/// An increasing point set in `[-1, 1]` with its angles `θ_i = arccos τ_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeSet {
    family: PointSetFamily,
    n_quadrature: usize,
    nodes: Vec<f64>,
    thetas: Vec<f64>,
}

impl NodeSet {
    /// Wraps caller-supplied nodes as an [`PointSetFamily::Explicit`] set.
    pub fn explicit(nodes: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::domain("a point set needs at least one node"));
        }
        if nodes.iter().any(|t| !t.is_finite() || t.abs() > 1.0) {
            return Err(Error::domain("nodes must lie in [-1, 1]"));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain("nodes must be strictly increasing"));
        }
        Ok(Self::assemble(PointSetFamily::Explicit, nodes.len(), nodes))
    }

    fn assemble(family: PointSetFamily, n_quadrature: usize, nodes: Vec<f64>) -> Self {
        let thetas = nodes
            .iter()
            .map(|&t| match t {
                1.0 => 0.0,
                -1.0 => PI,
                t => t.acos(),
            })
            .collect();
        NodeSet { family, n_quadrature, nodes, thetas }
    }

    /// Reinterprets externally built nodes as a member of `family`.
    pub(crate) fn relabel(mut self, family: PointSetFamily, n_quadrature: usize) -> Self {
        self.family = family;
        self.n_quadrature = n_quadrature;
        self
    }

    pub fn family(&self) -> PointSetFamily {
        self.family
    }

    /// Number of quadrature points `N` the set was built for.
    pub fn n_quadrature(&self) -> usize {
        self.n_quadrature
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes at which the differential equation is collocated: everything
    /// except an appended, non-collocated endpoint.
    pub fn collocation_indices(&self) -> Vec<usize> {
        let skip = self.family.augmented_endpoint();
        (0..self.len()).filter(|&i| Some(self.nodes[i]) != skip).collect()
    }
}

/// All `n` zeros of `P_n^(α,β)` in increasing order.
///
/// Each zero is bracketed by a sign change found on a uniform grid in
/// `θ = arccos τ`, then refined by Newton's method; a Newton step that
/// leaves the bracket is replaced by bisection.
pub fn jacobi_zeros(params: JacobiParams, n: usize) -> Result<Vec<f64>> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::domain(format!("zero count must be in 1..={MAX_DEGREE}, got {n}")));
    }
    let (alpha, beta) = (params.alpha(), params.beta());
    let brackets = sign_change_brackets(alpha, beta, n)?;
    let mut zeros = Vec::with_capacity(n);
    for (index, (lo, hi)) in brackets.into_iter().enumerate() {
        zeros.push(refine_zero(params, n, lo, hi).ok_or(Error::ZeroNotConverged { degree: n, index })?);
    }
    if alpha == beta {
        // Symmetric weight: enforce exact mirror symmetry of the zeros.
        for i in 0..n / 2 {
            let j = n - 1 - i;
            let z = 0.5 * (zeros[j] - zeros[i]);
            zeros[i] = -z;
            zeros[j] = z;
        }
        if n % 2 == 1 {
            zeros[n / 2] = 0.0;
        }
    }
    if zeros.windows(2).any(|w| w[1] <= w[0]) || zeros.iter().any(|z| z.abs() >= 1.0) {
        return Err(Error::ZeroNotConverged { degree: n, index: 0 });
    }
    Ok(zeros)
}

fn sign_change_brackets(alpha: f64, beta: f64, n: usize) -> Result<Vec<(f64, f64)>> {
    let mut samples = 16 * (n + 2);
    // The grid is refined until all n sign changes are separated.
    for _ in 0..4 {
        let taus: Vec<f64> = (0..=samples)
            .map(|k| (PI * (samples - k) as f64 / samples as f64).cos())
            .map(|t| t.clamp(-1.0, 1.0))
            .collect();
        let values: Vec<f64> = taus.iter().map(|&t| eval_unchecked(alpha, beta, n, t)).collect();
        let mut brackets = Vec::with_capacity(n);
        for k in 0..samples {
            let (a, b) = (values[k], values[k + 1]);
            if a == 0.0 {
                brackets.push((taus[k], taus[k]));
            } else if a.signum() != b.signum() && b != 0.0 {
                brackets.push((taus[k], taus[k + 1]));
            }
        }
        if brackets.len() == n {
            return Ok(brackets);
        }
        samples *= 4;
    }
    Err(Error::ZeroNotConverged { degree: n, index: 0 })
}

fn refine_zero(params: JacobiParams, n: usize, mut lo: f64, mut hi: f64) -> Option<f64> {
    if lo == hi {
        return Some(lo);
    }
    let (bracket_lo, bracket_hi) = (lo, hi);
    let sign_lo = eval_with_deriv(params, n, lo).0.signum();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_ITERATIONS {
        let (p, dp) = eval_with_deriv(params, n, x);
        if p == 0.0 {
            return Some(x);
        }
        if p.signum() == sign_lo {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - p / dp;
        let next = if dp != 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        let step = (next - x).abs();
        x = next;
        if step <= NEWTON_TOL || hi - lo <= 4.0 * f64::EPSILON {
            return Some(polish(params, n, x, bracket_lo, bracket_hi));
        }
    }
    None
}

/// A few unguarded Newton steps once the iterate is within a few ulps.
fn polish(params: JacobiParams, n: usize, mut x: f64, lo: f64, hi: f64) -> f64 {
    for _ in 0..3 {
        let (p, dp) = eval_with_deriv(params, n, x);
        if p == 0.0 || dp == 0.0 {
            break;
        }
        let next = x - p / dp;
        if !(next >= lo && next <= hi) || next == x {
            break;
        }
        x = next;
    }
    x
}

/// Assembles the point set of `family` with `n_quadrature` quadrature points.
pub fn build_point_set(family: PointSetFamily, n_quadrature: usize) -> Result<NodeSet> {
    let n = n_quadrature;
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::domain(format!(
            "number of quadrature points must be in 1..={MAX_DEGREE}, got {n}"
        )));
    }
    let nodes = match family {
        PointSetFamily::GaussLegendre => jacobi_zeros(JacobiParams::LEGENDRE, n)?,
        PointSetFamily::GaussPlusLeftEnd => {
            let mut v = vec![-1.0];
            v.extend(jacobi_zeros(JacobiParams::LEGENDRE, n)?);
            v
        }
        PointSetFamily::GaussPlusRightEnd => {
            let mut v = jacobi_zeros(JacobiParams::LEGENDRE, n)?;
            v.push(1.0);
            v
        }
        PointSetFamily::RadauRight => radau_right(n)?,
        PointSetFamily::RadauLeft => mirror(&radau_right(n)?),
        PointSetFamily::RadauRightPlusLeftEnd => {
            let mut v = vec![-1.0];
            v.extend(radau_right(n)?);
            v
        }
        PointSetFamily::RadauLeftPlusRightEnd => {
            let mut v = mirror(&radau_right(n)?);
            v.push(1.0);
            v
        }
        PointSetFamily::Equidistant => (0..=n)
            .map(|k| match k {
                0 => -1.0,
                k if k == n => 1.0,
                k => -1.0 + 2.0 * k as f64 / n as f64,
            })
            .collect(),
        PointSetFamily::Explicit => {
            return Err(Error::domain("explicit point sets are built with NodeSet::explicit"))
        }
    };
    Ok(NodeSet::assemble(family, n, nodes))
}

fn radau_right(n: usize) -> Result<Vec<f64>> {
    let mut v = if n > 1 { jacobi_zeros(JacobiParams::RADAU, n - 1)? } else { Vec::new() };
    v.push(1.0);
    Ok(v)
}

fn mirror(nodes: &[f64]) -> Vec<f64> {
    nodes.iter().rev().map(|t| -t).collect()
}

/// Which zero-location inequality a [`BoundCheck`] tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// `(2i-1)π/(2N+1) ≤ π - θ_i ≤ 2iπ/(2N+1)` for Legendre zeros.
    LegendreAngle,
    /// `(2i-1)π/(2N-1) < θ_{N-i} < 2(i+1)π/(2N+1)` for zeros of `P_{N-1}^(1,0)`.
    RadauAngle,
    /// `(2i-1)π/(2N+1) < π - θ_i < 2iπ/(2N-1)`, the same bound re-indexed.
    RadauReflectedAngle,
    /// `π - θ_i > i/N` and `θ_{N-i} > i/N`; `value` is the smaller slack.
    RadauAngleFloor,
    /// `θ_i - θ_{i+1} < 2.5π/N`.
    RadauSeparation,
}

/// One inequality `lower < value < upper` evaluated at index `i` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub kind: BoundKind,
    pub index: usize,
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub holds: bool,
    /// Distance to the nearer bound; negative when violated.
    pub margin: f64,
}

impl BoundCheck {
    fn new(kind: BoundKind, index: usize, lower: f64, value: f64, upper: f64) -> Self {
        let margin = (value - lower).min(upper - value);
        BoundCheck { kind, index, lower, value, upper, holds: margin > 0.0, margin }
    }
}

/// Outcome of [`zero_angle_diagnostics`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroAngleReport {
    pub family: PointSetFamily,
    pub n_quadrature: usize,
    pub checks: Vec<BoundCheck>,
}

impl ZeroAngleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn worst_margin(&self) -> f64 {
        self.checks.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min)
    }
}

/// Checks the known enclosures of zero angles for Gauss and right Radau sets.
pub fn zero_angle_diagnostics(ns: &NodeSet) -> Result<ZeroAngleReport> {
    let n = ns.n_quadrature();
    let nf = n as f64;
    let th = ns.thetas();
    let mut checks = Vec::new();
    match ns.family() {
        PointSetFamily::GaussLegendre => {
            for i in 1..=n {
                let fi = i as f64;
                checks.push(BoundCheck::new(
                    BoundKind::LegendreAngle,
                    i,
                    (2.0 * fi - 1.0) / (2.0 * nf + 1.0) * PI,
                    PI - th[i - 1],
                    2.0 * fi / (2.0 * nf + 1.0) * PI,
                ));
            }
        }
        PointSetFamily::RadauRight => {
            // th[0..n-1] are the angles of the n - 1 zeros; th[n-1] = 0 is the endpoint.
            for i in 1..n {
                let fi = i as f64;
                checks.push(BoundCheck::new(
                    BoundKind::RadauAngle,
                    i,
                    (2.0 * fi - 1.0) / (2.0 * nf - 1.0) * PI,
                    th[n - i - 1],
                    2.0 * (fi + 1.0) / (2.0 * nf + 1.0) * PI,
                ));
                checks.push(BoundCheck::new(
                    BoundKind::RadauReflectedAngle,
                    i,
                    (2.0 * fi - 1.0) / (2.0 * nf + 1.0) * PI,
                    PI - th[i - 1],
                    2.0 * fi / (2.0 * nf - 1.0) * PI,
                ));
                let slack = (PI - th[i - 1] - fi / nf).min(th[n - i - 1] - fi / nf);
                checks.push(BoundCheck::new(BoundKind::RadauAngleFloor, i, 0.0, slack, f64::INFINITY));
            }
            for i in 1..n.saturating_sub(1) {
                checks.push(BoundCheck::new(
                    BoundKind::RadauSeparation,
                    i,
                    0.0,
                    th[i - 1] - th[i],
                    2.5 * PI / nf,
                ));
            }
        }
        other => {
            return Err(Error::domain(format!(
                "zero-angle bounds are defined for gauss and radau-right sets, not {other}"
            )))
        }
    }
    Ok(ZeroAngleReport { family: ns.family(), n_quadrature: n, checks })
}

/// Worst slack of the strict interlacing `τ''_i < τ_i < τ'_i`, where `τ_i`
/// are the zeros of `P_{N-1}^(1,0)` and `τ''`, `τ'` those of `P_N`, `P_{N-1}`.
///
/// `radau_zeros` defaults to the computed zeros of `P_{N-1}^(1,0)`.
pub fn radau_interlacing_margin(n: usize, radau_zeros: Option<&[f64]>) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("interlacing needs N >= 2"));
    }
    let owned;
    let zeros = match radau_zeros {
        Some(z) => z,
        None => {
            owned = jacobi_zeros(JacobiParams::RADAU, n - 1)?;
            &owned
        }
    };
    if zeros.len() != n - 1 {
        return Err(Error::domain(format!("expected {} zeros, got {}", n - 1, zeros.len())));
    }
    let below = jacobi_zeros(JacobiParams::LEGENDRE, n)?;
    let above = jacobi_zeros(JacobiParams::LEGENDRE, n - 1)?;
    Ok(zeros
        .iter()
        .enumerate()
        .map(|(i, &t)| (t - below[i]).min(above[i] - t))
        .fold(f64::INFINITY, f64::min))
}

/// Range of `|P_N'(τ_i)| · i^1.5 / N²` over the Legendre zeros `τ_i ≤ 0`.
///
/// The scaled derivative at the left half of the zeros is bounded above and
/// below independently of `N`; this returns the observed `(min, max)`.
pub fn legendre_derivative_scaling(n: usize) -> Result<(f64, f64)> {
    let zeros = jacobi_zeros(JacobiParams::LEGENDRE, n)?;
    let nf = n as f64;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
    for (i, &t) in zeros.iter().enumerate().filter(|(_, &t)| t <= 0.0) {
        let dp = eval_with_deriv(JacobiParams::LEGENDRE, n, t).1.abs();
        let q = dp * ((i + 1) as f64).powf(1.5) / (nf * nf);
        lo = lo.min(q);
        hi = hi.max(q);
    }
    Ok((lo, hi))
}
