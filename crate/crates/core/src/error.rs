use thiserror::Error;

/// Errors raised by polynomial arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime in [2, 2^31 - 1]")]
    NotPrime(u64),
    #[error("operands live in different polynomial rings")]
    AmbientMismatch,
    #[error("variable weights must be positive, got {0}")]
    NonPositiveWeight(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("exponent overflow")]
    ExponentOverflow,
}

/// Errors raised by Gröbner, ring, module and resolution routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("the ideal contains a unit")]
    UnitIdeal,
    #[error("degree bookkeeping mismatch: {0}")]
    DegreeMismatch(String),
    #[error("ring map does not respect the source ideal: generator {0} maps to {1}")]
    IdealNotRespected(String, String),
    #[error("inconsistent degree scaling in ring map: {0}")]
    InconsistentScaling(String),
    #[error("image of `{0}` has a constant term")]
    ConstantTerm(String),
    #[error("wrong number of images: expected {expected}, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("not module-finite: {0} is not reachable from the given generators")]
    NotModuleFinite(String),
    #[error("element {0} does not lie in the maximal ideal")]
    NotInMaximalIdeal(String),
    #[error("cutoff {0} is too small")]
    CutoffTooSmall(i64),
    #[error("growth window too short: {0} Betti numbers, need at least 5")]
    WindowTooShort(usize),
    #[error("Poincaré series must start with 1, got {0}")]
    NotUnitConstant(u64),
    #[error("not a residue-field Poincaré series: deviation {index} would be {value}")]
    NotAResidueFieldSeries { index: usize, value: i128 },
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
