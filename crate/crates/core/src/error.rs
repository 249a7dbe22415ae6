use thiserror::Error;

/// Errors raised by construction, lookup and precondition checks.
///
/// Axiom failures are never errors; they are report entries.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CubicalError {
    #[error("{what}: index {index} out of range 1..={bound}")]
    IndexOutOfRange { what: String, index: usize, bound: usize },
    #[error("unknown cell {0}")]
    UnknownCell(String),
    #[error("malformed structure: {0}")]
    Structure(String),
    #[error("structure has no connection tables")]
    MissingConnections,
    #[error("structure has not been validated by the law suites")]
    NotValidated,
    #[error("cell budget exceeded: {count} cells requested, budget {budget}")]
    CellBudget { count: u128, budget: u128 },
    #[error("precondition failed: {0}")]
    Domain(String),
    #[error("inconsistent structure: {0}")]
    Inconsistent(String),
    #[error("not an (n,0)-category: {0}")]
    NotNp(String),
    #[error("level error: {0}")]
    Level(String),
    #[error("parse error: {0}")]
    Parse(String),
}
