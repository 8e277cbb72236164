use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("arity mismatch: expected {expected} components, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("not a unit: zero divisor at component {component}")]
    NotAUnit { component: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("subgroup is not contained in the ambient group")]
    NotContained,
    #[error("not a cocycle: coboundary is nontrivial at {tuple:?}")]
    NotACocycle { tuple: Vec<usize> },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
