//! Lebesgue constants of Gauss and Radau point sets.
//!
//! The crate evaluates Jacobi polynomials, computes their zeros, assembles
//! the Gauss, Radau and endpoint-augmented point sets used by orthogonal
//! collocation, and measures how well polynomial interpolation behaves on
//! them:
//!
//! * [`jacobi`]: `P_n^(α,β)` and its derivative,
//! * [`nodes`]: zeros, point-set families and zero-location diagnostics,
//! * [`interp`]: barycentric interpolation and differentiation matrices,
//! * [`lebesgue`]: Lebesgue functions and constants,
//! * [`analysis`]: sweeps, growth fits, Jackson bounds and collocation residuals,
//! * [`checks`]: the invariant suite behind `lebesgue check`.
//!
//! ```
//! use jacobi_lebesgue::{barycentric_weights, build_point_set, lebesgue_constant, PointSetFamily};
//!
//! let set = build_point_set(PointSetFamily::GaussPlusLeftEnd, 20)?;
//! let basis = barycentric_weights(set.nodes())?;
//! let report = lebesgue_constant(&basis)?;
//! assert!(report.constant > 1.0 && report.constant < 20.0);
//! # Ok::<(), jacobi_lebesgue::Error>(())
//! ```

pub mod analysis;
pub mod checks;
mod error;
pub mod interp;
pub mod jacobi;
pub mod lebesgue;
pub mod nodes;

pub use analysis::{
    collocation_residual, fit_model, interp_derivative_error, jackson_bound, markov_witness,
    prop1_bound, prop1_check, sweep_constants, sup_norm_grid, CollocationProblem, FitModel,
    FitResult, ResidualReport, SweepRow, SweepTable,
};
pub use error::{Error, Result};
pub use interp::{
    barycentric_weights, basis_eval, differentiation_matrix, interpolate, BarycentricBasis,
    DifferentiationMatrix,
};
pub use jacobi::{jacobi_deriv, jacobi_eval, JacobiParams};
pub use lebesgue::{
    erdos_lower_bound, lebesgue_constant, lebesgue_constant_with, lebesgue_function,
    LebesgueReport, SearchSettings,
};
pub use nodes::{build_point_set, jacobi_zeros, zero_angle_diagnostics, NodeSet, PointSetFamily};
