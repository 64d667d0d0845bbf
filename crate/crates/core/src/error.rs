use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument outside domain ({detail})")]
    Domain { function: &'static str, detail: String },

    #[error("{function}: no convergence after {iterations} iterations")]
    NoConvergence { function: &'static str, iterations: usize },

    /// The matched Gamma would collapse to a spike; callers choose a fallback.
    #[error("degenerate variance: mean {mu:e}, second moment {mu2:e}")]
    DegenerateVariance { mu: f64, mu2: f64 },

    /// Both IRS hops are effectively deterministic, so the sum has no spread to fit.
    #[error("per-element amplitude mean {mu1} is within 1e-12 of 1")]
    DegenerateS1 { mu1: f64 },

    #[error("probability {0} outside [0, 1]")]
    ProbabilityRange(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{0}")]
    Io(String),
}

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}
