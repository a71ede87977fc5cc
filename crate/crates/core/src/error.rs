use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value {value} while evaluating at x = {at}")]
    NonFiniteEvaluation { at: f64, value: f64 },

    #[error("quadrature reached max depth {max_depth} without meeting tolerance (best estimate {estimate}, error {abs_error:e})")]
    DepthExceeded {
        estimate: f64,
        abs_error: f64,
        max_depth: usize,
    },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("function has no derivative attached")]
    MissingDerivative,

    #[error("function is not 2π-periodic")]
    NotPeriodic,

    #[error("cannot evaluate L_n(1) for a non-unital custom operator: {0}")]
    NonUnitalWithoutOne(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
