use thiserror::Error;

use crate::projective::IfsReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("halfspace system is unbounded")]
    Unbounded,
    #[error("halfspace system has empty interior (chebyshev radius {radius:e})")]
    EmptyInterior { radius: f64 },
    #[error("halfspace system is infeasible")]
    Infeasible,
    #[error("degenerate numerics: {0}")]
    DegenerateNumerics(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("degenerate facet: {0}")]
    DegenerateFacet(String),
    #[error("point lies outside the body (violation {violation:e})")]
    OutsideBody { violation: f64 },
    #[error("linear program did not converge within {iterations} pivots")]
    SolverFailure { iterations: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("eps {eps} outside [0, {inradius}]")]
    EpsOutOfRange { eps: f64, inradius: f64 },
    #[error("projective image is degenerate (coordinate sum {sum:e})")]
    DegenerateImage { sum: f64 },
    #[error("singular matrix (det {det:e})")]
    SingularMatrix { det: f64 },
    #[error("ifs failed validation: {}", .0.violations.join("; "))]
    InvalidIfs(Box<IfsReport>),
    #[error("unstable exponent estimate: {0}")]
    Unstable(String),
    #[error("insufficient depth: {0}")]
    InsufficientDepth(String),
}

impl Error {
    /// Short machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Unbounded => "Unbounded",
            Error::EmptyInterior { .. } => "EmptyInterior",
            Error::Infeasible => "Infeasible",
            Error::DegenerateNumerics(_) => "DegenerateNumerics",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::DegenerateFacet(_) => "DegenerateFacet",
            Error::OutsideBody { .. } => "OutsideBody",
            Error::SolverFailure { .. } => "SolverFailure",
            Error::BadParameter(_) => "BadParameter",
            Error::EpsOutOfRange { .. } => "EpsOutOfRange",
            Error::DegenerateImage { .. } => "DegenerateImage",
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::InvalidIfs(_) => "InvalidIfs",
            Error::Unstable(_) => "Unstable",
            Error::InsufficientDepth(_) => "InsufficientDepth",
        }
    }
}
