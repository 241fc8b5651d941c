use thiserror::Error;

/// Errors raised when constructing or combining the library's domain objects.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("a sample space needs between 1 and {max} labels, got {got}")]
    SpaceSize { got: usize, max: usize },

    #[error("duplicate label `{0}` in sample space")]
    DuplicateLabel(String),

    #[error("sample-space labels must be non-empty strings")]
    EmptyLabel,

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("expected {expected} values for this sample space, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("all values must be finite")]
    NonFiniteValue,

    #[error("probability at index {index} is negative ({value})")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities sum to {0}, more than 1e-9 away from 1")]
    NotNormalized(f64),

    #[error("operands live on different sample spaces")]
    SpaceMismatch,

    #[error("importance must be non-negative and not identically zero")]
    InvalidImportance,

    #[error("event nesting must satisfy (empty) < e1 < e2")]
    InvalidEventNesting,

    #[error("performance lies outside the domain of the operation")]
    OutOfDomain,

    #[error("entity list is empty")]
    EmptyEntityList,

    #[error("duplicate entity id `{0}`")]
    DuplicateEntityId(String),

    #[error("inputs must have equal length ({0} vs {1})")]
    DimensionMismatch(usize, usize),

    #[error("need at least {need} items, got {got}")]
    InsufficientData { need: usize, got: usize },

    #[error("this check requires a satisfaction taking exactly two distinct values")]
    NonBinarySatisfaction,

    #[error("positive prior must lie strictly between 0 and 1, got {0}")]
    InvalidPrior(f64),

    #[error("fixed-prior constraints require the four-outcome (tn, fp, fn, tp) layout")]
    UnsupportedConstraint,

    #[error("resolution must be at least 1")]
    InvalidResolution,

    #[error("mixing weight must lie in [0, 1], got {0}")]
    InvalidWeight(f64),

    #[error("search parameter must lie in [0, 1], got {0}")]
    InvalidSearchParameter(f64),

    #[error("unknown score `{0}`")]
    UnknownScore(String),

    #[error("no violation found on this grid; refine the resolution or widen the weights")]
    NoViolationFound,

    #[error("no class labels given")]
    NoClasses,
}

pub type Result<T> = std::result::Result<T, Error>;
