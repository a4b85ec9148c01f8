use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("negative value at index {index}")]
    NegativeValue { index: usize },
    #[error("non-finite value at index {index}")]
    NonFiniteValue { index: usize },
    #[error("group {index} has a non-positive count")]
    NonPositiveCount { index: usize },
    #[error("all incomes are zero")]
    AllZeroIncome,
    #[error("parameter {name} out of domain: requires {constraint}")]
    ParameterOutOfDomain {
        name: &'static str,
        constraint: &'static str,
    },
    #[error("invalid Lorenz function: {0}")]
    InvalidLorenz(String),
    #[error("argument {value} outside [0, 1]")]
    DomainError { value: f64 },
    #[error("need at least {min} points, got {count}")]
    CountTooSmall { count: usize, min: usize },
    #[error("bisection did not converge within {iterations} iterations")]
    ConvergenceFailure { iterations: usize },
    #[error("index ordering violated: normalized k {normalized_k}, pietra {pietra}, gini {gini}")]
    OrderingViolation { normalized_k: f64, pietra: f64, gini: f64 },
    #[error("only {found} usable points for the tail fit (need 3)")]
    InsufficientPoints { found: usize },
    #[error("degenerate fit window [{start}, {end}]")]
    DegenerateWindow { start: f64, end: f64 },
    #[error("citation curve has no fixed point in [1, m]")]
    NoFixedPointInRange,
    #[error("invalid distribution spec {spec:?}: {reason}")]
    InvalidSpec { spec: String, reason: String },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}
