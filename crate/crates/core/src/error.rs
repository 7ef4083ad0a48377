use thiserror::Error;

use crate::passivity::HypothesisReport;

/// Errors raised across the solver stack.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("set is empty: {0}")]
    EmptySet(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        best: Vec<f64>,
    },

    #[error("matrix is not positive semi-definite (min eigenvalue of symmetric part {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("pivot limit {limit} exceeded")]
    PivotLimit { limit: usize },

    #[error("problem is infeasible: {0}")]
    Infeasible(String),

    #[error("problem size {size} exceeds limit {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("point lies outside the operator domain (distance {distance:e})")]
    OutOfDomain { distance: f64 },

    #[error("time {t} outside [{start}, {end}]")]
    OutOfRange { t: f64, start: f64, end: f64 },

    #[error("hypothesis gate failed:\n{0}")]
    Hypothesis(Box<HypothesisReport>),

    #[error("step {step} failed: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("scenario error at `{path}`: {message}")]
    Scenario { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch { .. }
            | Error::InvalidArgument(_)
            | Error::Scenario { .. }
            | Error::EmptySet(_)
            | Error::Unsupported(_)
            | Error::TooLarge { .. }
            | Error::OutOfRange { .. }
            | Error::Io(_) => 2,
            Error::Hypothesis(_) | Error::NotPsd { .. } | Error::OutOfDomain { .. } => 3,
            Error::Step { source, .. } => source.exit_code(),
            Error::NonConvergence { .. } | Error::PivotLimit { .. } | Error::Infeasible(_) => 4,
        }
    }

    pub(crate) fn dim(context: &'static str, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            context,
            expected,
            found,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
