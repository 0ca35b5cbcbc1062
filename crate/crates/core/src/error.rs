use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Newton/bisection failed to pin down a polynomial zero.
    #[error("zero {index} of the degree-{degree} Jacobi polynomial did not converge")]
    ZeroNotConverged { degree: usize, index: usize },

    /// The local maximization of the Lebesgue function failed on an interval.
    #[error("Lebesgue function search did not converge on interval {interval} [{lo}, {hi}]")]
    SearchNotConverged { interval: usize, lo: f64, hi: f64 },

    /// A user-supplied function returned a non-finite value.
    #[error("evaluation of {what} at tau = {tau} returned a non-finite value")]
    NonFinite { what: &'static str, tau: f64 },

    /// A sweep row failed; carries the offending number of quadrature points.
    #[error("N = {n}: {source}")]
    AtN { n: usize, source: Box<Error> },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// `true` for convergence or evaluation failures, `false` for bad input.
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::Domain(_) => false,
            Error::AtN { source, .. } => source.is_numeric(),
            _ => true,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
