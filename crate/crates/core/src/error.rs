use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no weight given for variable `{0}`")]
    MissingWeight(String),

    #[error("weight of `{0}` must be a positive integer")]
    ZeroWeight(String),

    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("component for `{0}` has a nonzero constant term")]
    NonZeroConstantTerm(String),

    #[error("singularity is not isolated (Jacobian ideal does not contain m^k for k <= {cap})")]
    NonIsolated { cap: u32 },

    #[error("germ is smooth (Milnor number 0)")]
    SmoothPoint,

    #[error("jet order {order} is below the determinacy bound mu + 1 = {required}")]
    DeterminacyBound { order: u32, required: u32 },

    #[error("substitution has no inverse attached")]
    NotInvertible,

    #[error("linear part of the substitution is singular")]
    SingularLinearPart,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("least-weight part is not a simple (ADE) form: {0}")]
    NotSimpleLeadingPart(String),

    #[error("not a hypersurface singularity germ: {0}")]
    NotHypersurfaceGerm(String),

    #[error("unsupported germ: {0}")]
    UnsupportedGerm(String),

    #[error("residual has multiplicity {found}, expected {expected}")]
    MultiplicityMismatch { expected: u32, found: String },

    #[error("parameter constraint violated: {0}")]
    ParameterConstraint(String),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("division is not exact: {0}")]
    InexactDivision(String),

    #[error("coordinate change would need irrational coefficients: {0}")]
    IrrationalChange(String),

    #[error("variable names clash: `{0}`")]
    NameClash(String),

    #[error("witness failed verification: {0}")]
    WitnessCheckFailed(String),

    #[error("reduction did not converge within {0} steps")]
    NoConvergence(usize),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// Stable machine-readable code, used in structured CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MissingWeight(_) => "missing-weight",
            Error::ZeroWeight(_) => "zero-weight",
            Error::ArityMismatch { .. } => "arity-mismatch",
            Error::NonZeroConstantTerm(_) => "nonzero-constant-term",
            Error::NonIsolated { .. } => "non-isolated",
            Error::SmoothPoint => "smooth-point",
            Error::DeterminacyBound { .. } => "bound-violated",
            Error::NotInvertible => "not-invertible",
            Error::SingularLinearPart => "singular-linear-part",
            Error::PreconditionViolated(_) => "precondition-violated",
            Error::NotSimpleLeadingPart(_) => "not-simple-leading-part",
            Error::NotHypersurfaceGerm(_) => "not-hypersurface-germ",
            Error::UnsupportedGerm(_) => "unsupported-germ",
            Error::MultiplicityMismatch { .. } => "multiplicity-mismatch",
            Error::ParameterConstraint(_) => "parameter-constraint",
            Error::UnsupportedShape(_) => "unsupported-shape",
            Error::InexactDivision(_) => "inexact-division",
            Error::IrrationalChange(_) => "irrational-change",
            Error::NameClash(_) => "name-clash",
            Error::WitnessCheckFailed(_) => "witness-check-failed",
            Error::NoConvergence(_) => "no-convergence",
            Error::Parse(ParseError::UnknownVariable { .. }) => "unknown-variable",
            Error::Parse(_) => "syntax",
        }
    }
}
