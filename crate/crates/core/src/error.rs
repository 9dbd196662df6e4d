use thiserror::Error;

/// Broad failure classes, used by front ends to choose exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Numeric,
    Budget,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("function vanishes (or is singular) on the contour: min modulus {min_modulus:e}")]
    BoundaryZero { min_modulus: f64 },
    #[error("contour refinement did not converge: {0}")]
    NonConvergence(String),
    #[error("zero cluster could not be resolved near {re}+{im}i (winding {winding})")]
    ClusterUnresolved { re: f64, im: f64, winding: i64 },
    #[error("declared pole at {re}+{im}i lies inside the quadrature circle")]
    PoleInDisk { re: f64, im: f64 },
    #[error("invalid radii: need 0 < r < r' (got r = {r}, r' = {r_prime})")]
    InvalidRadii { r: f64, r_prime: f64 },
    #[error("zeta has a pole at s = 1")]
    PoleAtOne,
    #[error("zeta is too close to zero at {re}+{im}i for a reciprocal")]
    NearZeroOfZeta { re: f64, im: f64 },
    #[error("coefficient {index} violates the declared growth bound")]
    GrowthViolation { index: usize },
    #[error("term budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("polynomial exceeds degree caps: {0}")]
    DegreeCapExceeded(String),
    #[error("symbolic differentiation exceeded the term budget ({0} terms)")]
    TermBudgetExceeded(usize),
    #[error("jet has vanishing leading value")]
    ZeroLeadingJet,
    #[error("no nonzero root for the theta equation after re-pinning")]
    NoNonzeroRoot,
    #[error("fewer than two coefficient series are nonzero at the chosen centre")]
    DegenerateAtAlpha,
    #[error("centre alpha must be nonzero")]
    ZeroAlpha,
    #[error("target function vanishes on the Rouche circle")]
    TargetVanishesOnCircle,
    #[error("coefficient series vanishes on the Rouche circle")]
    CoefficientVanishesOnCircle,
    #[error("zero set is incomplete (unresolved clusters)")]
    IncompleteZeroSet,
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("unknown gallery entry `{0}`")]
    UnknownEntry(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("evaluation failed: {0}")]
    Evaluation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::BudgetExceeded { .. }
            | Error::TermBudgetExceeded(_)
            | Error::DegreeCapExceeded(_) => ErrorClass::Budget,
            Error::InvalidInput(_)
            | Error::UnknownEntry(_)
            | Error::ParamOutOfRange(_)
            | Error::GrowthViolation { .. }
            | Error::HypothesisViolation(_)
            | Error::InvalidRadii { .. }
            | Error::ZeroAlpha => ErrorClass::Input,
            _ => ErrorClass::Numeric,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
