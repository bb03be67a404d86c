use thiserror::Error;

/// Errors raised by the exact pipelines and the numeric checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("truncation order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("jet degree {requested} exceeds truncation order {order}")]
    DegreeTooLarge { requested: usize, order: usize },

    #[error("vector field component {component} has nonzero constant term")]
    AffineField { component: usize },

    #[error("element has nonzero constant term")]
    NonzeroConstantTerm,

    #[error("linear part is not invertible")]
    NotInvertible,

    #[error("cochain is not closed")]
    NotClosed,

    #[error("Lie algebra is not semisimple (Killing form is degenerate)")]
    NotSemisimple,

    #[error("Maurer-Cartan residual is nonzero")]
    NonzeroResidual,

    #[error("characteristic polynomial does not split over the Gaussian rationals")]
    InexactSpectrum,

    #[error("operator is not invertible at degree {degree}")]
    ResonantDegree { degree: usize },

    #[error("linear part is not semisimple")]
    NotSemisimpleLinearPart,

    #[error("bilinear form is not symmetric at basis pair ({0}, {1})")]
    AsymmetricForm(usize, usize),

    #[error("quadratic form is indefinite")]
    IndefiniteForm,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, JetError>;
