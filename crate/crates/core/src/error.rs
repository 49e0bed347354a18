use thiserror::Error;

use crate::lie::Family;

/// Failures of the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("operators act on different numbers of sites ({left} vs {right})")]
    SiteMismatch { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid {what} index {index} (expected < {bound})")]
    InvalidIndex { what: &'static str, index: usize, bound: usize },
    #[error("{op} is not defined for type {family:?}")]
    WrongFamily { op: &'static str, family: Family },
    #[error("invalid Lie algebra data: {0}")]
    InvalidSpec(String),
    #[error("{what} = {value} outside the supported range {min}..={max}")]
    OutOfRange { what: &'static str, value: usize, min: usize, max: usize },
    #[error("empty state has no weight")]
    EmptyState,
    #[error("state is not a weight vector")]
    InhomogeneousState,
    #[error("coincident points: {0}")]
    CoincidentPoints(String),
    #[error("no finite solution")]
    NoFiniteSolution,
    #[error("equation is satisfied identically; the root is not determined")]
    DegenerateSystem,
    #[error("singular Jacobian at Newton iteration {iteration}")]
    SingularJacobian { iteration: usize },
    #[error("Newton iteration did not converge after {iterations} steps (max residual {residual:e})")]
    Divergence { iterations: usize, residual: f64 },
    #[error("roots collided: {0}")]
    RootCollision(String),
    #[error("symmetrizer denominator vanishes at pair ({a}, {b})")]
    VanishingDenominator { a: usize, b: usize },
    #[error("the Bethe vector is zero")]
    ZeroBetheVector,
    #[error("Bethe ansatz equations violated; residuals {residuals:?}")]
    BaeViolated { residuals: Vec<String> },
    #[error("weights must be integers to form the master-function polynomials")]
    NonIntegerWeights,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Algebra(AlgebraError::DivisionByZero) => "division-by-zero",
            Error::Algebra(AlgebraError::SiteMismatch { .. }) => "site-mismatch",
            Error::InvalidIndex { .. } => "invalid-index",
            Error::WrongFamily { .. } => "wrong-family",
            Error::InvalidSpec(_) => "invalid-spec",
            Error::OutOfRange { .. } => "out-of-range",
            Error::EmptyState => "empty-state",
            Error::InhomogeneousState => "inhomogeneous-state",
            Error::CoincidentPoints(_) => "coincident-points",
            Error::NoFiniteSolution => "no-finite-solution",
            Error::DegenerateSystem => "degenerate-system",
            Error::SingularJacobian { .. } => "singular-jacobian",
            Error::Divergence { .. } => "divergence",
            Error::RootCollision(_) => "root-collision",
            Error::VanishingDenominator { .. } => "vanishing-denominator",
            Error::ZeroBetheVector => "zero-bethe-vector",
            Error::BaeViolated { .. } => "bae-violated",
            Error::NonIntegerWeights => "non-integer-weights",
            Error::Unsupported(_) => "unsupported",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
