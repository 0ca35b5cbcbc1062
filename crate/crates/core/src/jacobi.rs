//! Jacobi polynomials `P_n^(α,β)` in the standard normalization
//! `P_n^(α,β)(1) = C(n+α, n)`.
//!
//! Values are computed with the three-term recurrence, ascending in degree:
//!
//! ```text
//! P_0 = 1
//! P_1 = (α + 1) + (α + β + 2)(τ - 1)/2
//! 2k'(k' + α + β)(2k' + α + β - 2) P_k' =
//!     (2k' + α + β - 1)[(2k' + α + β)(2k' + α + β - 2)τ + α² - β²] P_{k'-1}
//!     - 2(k' + α - 1)(k' + β - 1)(2k' + α + β) P_{k'-2}
//! ```
//!
//! Derivatives use `d/dτ P_n^(α,β) = (n + α + β + 1)/2 · P_{n-1}^(α+1,β+1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Highest degree accepted by the checked entry points.
pub const MAX_DEGREE: usize = 200;

/// How far outside `[-1, 1]` an argument may stray (root finders overshoot).
pub const DOMAIN_SLACK: f64 = 1e-8;

/// Exponents of the weight `(1 - τ)^α (1 + τ)^β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
}

impl JacobiParams {
    /// Legendre polynomials, `α = β = 0`.
    pub const LEGENDRE: JacobiParams = JacobiParams { alpha: 0.0, beta: 0.0 };
    /// `α = 1, β = 0`, whose zeros are the interior Radau points.
    pub const RADAU: JacobiParams = JacobiParams { alpha: 1.0, beta: 0.0 };

    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) || alpha <= -1.0 || beta <= -1.0 {
            return Err(Error::domain(format!(
                "Jacobi parameters must satisfy alpha > -1 and beta > -1, got ({alpha}, {beta})"
            )));
        }
        Ok(JacobiParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The parameters with `α` and `β` exchanged.
    pub fn swapped(&self) -> Self {
        JacobiParams { alpha: self.beta, beta: self.alpha }
    }

    /// Parameters of the derivative family, `(α + 1, β + 1)`.
    pub fn raised(&self) -> Self {
        JacobiParams { alpha: self.alpha + 1.0, beta: self.beta + 1.0 }
    }
}

fn check_args(n: usize, tau: f64) -> Result<()> {
    if n > MAX_DEGREE {
        return Err(Error::domain(format!("degree {n} exceeds the supported maximum {MAX_DEGREE}")));
    }
    if !tau.is_finite() || tau.abs() > 1.0 + DOMAIN_SLACK {
        return Err(Error::domain(format!("tau = {tau} lies outside [-1, 1]")));
    }
    Ok(())
}

/// `P_n^(α,β)(τ)`.
pub fn jacobi_eval(params: JacobiParams, n: usize, tau: f64) -> Result<f64> {
    check_args(n, tau)?;
    Ok(eval_unchecked(params.alpha, params.beta, n, tau))
}

/// `d/dτ P_n^(α,β)(τ)`; requires `n ≥ 1`.
pub fn jacobi_deriv(params: JacobiParams, n: usize, tau: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("jacobi_deriv requires degree n >= 1"));
    }
    check_args(n, tau)?;
    Ok(deriv_unchecked(params.alpha, params.beta, n, tau))
}

/// `(P_n(τ), P_n'(τ))` without argument checks.
pub(crate) fn eval_with_deriv(params: JacobiParams, n: usize, tau: f64) -> (f64, f64) {
    let p = eval_unchecked(params.alpha, params.beta, n, tau);
    let dp = if n == 0 { 0.0 } else { deriv_unchecked(params.alpha, params.beta, n, tau) };
    (p, dp)
}

pub(crate) fn deriv_unchecked(alpha: f64, beta: f64, n: usize, tau: f64) -> f64 {
    0.5 * (n as f64 + alpha + beta + 1.0) * eval_unchecked(alpha + 1.0, beta + 1.0, n - 1, tau)
}

pub(crate) fn eval_unchecked(alpha: f64, beta: f64, n: usize, tau: f64) -> f64 {
    let ab = alpha + beta;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut curr = (alpha + 1.0) + 0.5 * (ab + 2.0) * (tau - 1.0);
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (s - 2.0);
        let a2 = (s - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (s - 1.0) * s * (s - 2.0);
        let a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
        let next = ((a2 + a3 * tau) * curr - a4 * prev) / a1;
        prev = curr;
        curr = next;
    }
    curr
}
