use thiserror::Error;

/// Errors produced by the geometry kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    /// Inputs coincide or are otherwise degenerate for the requested construction.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    /// A point lies outside the model domain (or a parameter is out of range).
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// The denominator of a Mobius map vanishes at the input; the image is the point at infinity.
    #[error("pole at input: image is the point at infinity")]
    PoleAtInput,
    #[error("boundary sampler yielded {0} points, need at least 2")]
    EmptyBoundary(usize),
    #[error("negative discriminant: {0}")]
    NegativeDiscriminant(f64),
    #[error("adaptive quadrature did not converge within {0} subintervals")]
    NoConvergence(usize),
    /// Two independent evaluations of the same quantity disagree.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

impl GeomError {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            GeomError::DegenerateInput(_) => "DegenerateInput",
            GeomError::DomainError(_) => "DomainError",
            GeomError::DimensionMismatch { .. } => "DimensionMismatch",
            GeomError::PoleAtInput => "PoleAtInput",
            GeomError::EmptyBoundary(_) => "EmptyBoundary",
            GeomError::NegativeDiscriminant(_) => "NegativeDiscriminant",
            GeomError::NoConvergence(_) => "NoConvergence",
            GeomError::CrossCheck(_) => "CrossCheck",
        }
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;
