//! Error type shared by the whole engine.

use thiserror::Error;

/// Errors raised by symbol arithmetic, operator calculus and the
/// group-theoretic machinery.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(i64, i64),

    #[error("variable count mismatch: {0} vs {1}")]
    VarsMismatch(usize, usize),

    #[error("variable index {index} out of range 1..={vars}")]
    BadVariableIndex { index: usize, vars: usize },

    #[error("truncation context mismatch: {0}")]
    ContextMismatch(String),

    #[error("degree {degree} is below the reliability floor {floor}")]
    FloorViolation { degree: i64, floor: i64 },

    #[error("operator is not invertible: {0}")]
    NotInvertible(String),

    #[error("input floor too high to deliver the requested target floor {target}")]
    InsufficientFloor { target: i64 },

    #[error("operator is not self-adjoint: first defect at degree {degree}")]
    NotSelfAdjoint { degree: i64 },

    #[error("bad principal symbol: {0}")]
    BadPrincipalSymbol(String),

    #[error("morphisms are not composable: {0}")]
    NonComposable(String),

    #[error("search space of size {size} exceeds the budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("axiom violation: {0}")]
    AxiomViolation(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
