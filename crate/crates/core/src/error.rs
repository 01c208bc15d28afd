use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not reach tolerance: estimate {estimate:e}, error {error:e} after {subdivisions} subdivisions")]
    ToleranceNotReached {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("root finding did not converge: {0}")]
    NoConvergence(String),

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("all observations are censored; no interior maximum exists")]
    AllCensored,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("non-finite log-likelihood at {0:?}")]
    Evaluation([f64; 2]),

    #[error("iterate left the admissible box [1e-6, 1e6]: {0:?}")]
    BoundaryDrift([f64; 2]),

    #[error("observed information is singular or not positive definite")]
    SingularInformation,

    #[error("simulation aborted: {discarded} of {attempted} replicates discarded")]
    ExcessiveDiscards { attempted: usize, discarded: usize },
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
