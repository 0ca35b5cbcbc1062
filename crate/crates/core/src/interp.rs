//! Barycentric Lagrange interpolation on a point set.
//!
//! With weights `w_j = 1 / ∏_{k≠j} (τ_j - τ_k)` the Lagrange basis is
//!
//! ```text
//! L_j(τ) = (w_j / (τ - τ_j)) / Σ_k w_k / (τ - τ_k)
//! ```
//!
//! which costs O(n) per point and is stable for the node sets used here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::DOMAIN_SLACK;

/// Minimum separation between distinct nodes.
pub const MIN_NODE_GAP: f64 = 1e-14;

/// An evaluation point this close to a node is treated as the node itself.
pub const NODE_HIT_TOL: f64 = 1e-15;

/// Nodes plus barycentric weights, scaled so that `max |w_j| = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarycentricBasis {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl BarycentricBasis {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn node_hit(&self, tau: f64) -> Option<usize> {
        self.nodes.iter().position(|&t| (tau - t).abs() <= NODE_HIT_TOL)
    }

    /// `[L_0(τ), …, L_n(τ)]`.
    pub fn basis_values(&self, tau: f64) -> Result<Vec<f64>> {
        check_tau(tau)?;
        if let Some(hit) = self.node_hit(tau) {
            let mut out = vec![0.0; self.len()];
            out[hit] = 1.0;
            return Ok(out);
        }
        let mut terms: Vec<f64> =
            self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w / (tau - t)).collect();
        let denom: f64 = terms.iter().sum();
        terms.iter_mut().for_each(|q| *q /= denom);
        Ok(terms)
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if !tau.is_finite() || tau.abs() > 1.0 + DOMAIN_SLACK {
        return Err(Error::domain(format!("tau = {tau} lies outside [-1, 1]")));
    }
    Ok(())
}

/// Barycentric weights for strictly increasing, distinct nodes.
pub fn barycentric_weights(nodes: &[f64]) -> Result<BarycentricBasis> {
    if nodes.is_empty() {
        return Err(Error::domain("interpolation needs at least one node"));
    }
    if nodes.iter().any(|t| !t.is_finite()) {
        return Err(Error::domain("nodes must be finite"));
    }
    if let Some(w) = nodes.windows(2).find(|w| (w[1] - w[0]).is_nan() || w[1] - w[0] <= MIN_NODE_GAP) {
        return Err(Error::domain(format!(
            "nodes must be strictly increasing with gaps above {MIN_NODE_GAP}: {} then {}",
            w[0], w[1]
        )));
    }
    // Differences are scaled by 2 (four over the interval length) so the
    // products stay in range for a few hundred nodes.
    let mut weights: Vec<f64> = nodes
        .iter()
        .enumerate()
        .map(|(j, &tj)| {
            let prod = nodes
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .fold(1.0, |acc, (_, &tk)| acc * 2.0 * (tj - tk));
            1.0 / prod
        })
        .collect();
    let scale = weights.iter().fold(0.0_f64, |m, w| m.max(w.abs()));
    weights.iter_mut().for_each(|w| *w /= scale);
    Ok(BarycentricBasis { nodes: nodes.to_vec(), weights })
}

/// `L_j(τ)`; exactly `δ_ij` when `τ` is node `i`.
pub fn basis_eval(basis: &BarycentricBasis, j: usize, tau: f64) -> Result<f64> {
    if j >= basis.len() {
        return Err(Error::domain(format!("basis index {j} out of range for {} nodes", basis.len())));
    }
    check_tau(tau)?;
    if let Some(hit) = basis.node_hit(tau) {
        return Ok(if hit == j { 1.0 } else { 0.0 });
    }
    let denom: f64 = basis.nodes.iter().zip(&basis.weights).map(|(&t, &w)| w / (tau - t)).sum();
    Ok(basis.weights[j] / (tau - basis.nodes[j]) / denom)
}

/// `Σ_j values_j L_j(τ)`.
pub fn interpolate(basis: &BarycentricBasis, values: &[f64], tau: f64) -> Result<f64> {
    if values.len() != basis.len() {
        return Err(Error::domain(format!(
            "{} values supplied for {} nodes",
            values.len(),
            basis.len()
        )));
    }
    check_tau(tau)?;
    if let Some(hit) = basis.node_hit(tau) {
        return Ok(values[hit]);
    }
    let (mut num, mut den) = (0.0, 0.0);
    for ((&t, &w), &v) in basis.nodes.iter().zip(&basis.weights).zip(values) {
        let q = w / (tau - t);
        num += q * v;
        den += q;
    }
    Ok(num / den)
}

/// Square matrix `D[k][j] = L_j'(τ_k)` stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DifferentiationMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl DifferentiationMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.size + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.size..(row + 1) * self.size]
    }

    /// `D · values`: derivative of the interpolant at every node.
    pub fn apply(&self, values: &[f64]) -> Result<Vec<f64>> {
        if values.len() != self.size {
            return Err(Error::domain(format!(
                "{} values supplied for a {}x{} matrix",
                values.len(),
                self.size,
                self.size
            )));
        }
        Ok((0..self.size)
            .map(|k| self.row(k).iter().zip(values).map(|(d, v)| d * v).sum())
            .collect())
    }
}

/// Pseudospectral differentiation matrix. The diagonal is the negated sum
/// of the off-diagonal row, so every row sums to zero.
pub fn differentiation_matrix(basis: &BarycentricBasis) -> Result<DifferentiationMatrix> {
    let n = basis.len();
    if n < 2 {
        return Err(Error::domain("a differentiation matrix needs at least two nodes"));
    }
    let (t, w) = (&basis.nodes, &basis.weights);
    let mut entries = vec![0.0; n * n];
    for k in 0..n {
        let mut diag = 0.0;
        for j in (0..n).filter(|&j| j != k) {
            let d = (w[j] / w[k]) / (t[k] - t[j]);
            entries[k * n + j] = d;
            diag -= d;
        }
        entries[k * n + k] = diag;
    }
    Ok(DifferentiationMatrix { size: n, entries })
}
