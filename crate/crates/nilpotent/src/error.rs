use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilpotentError {
    #[error("the group law needs 2 to be invertible")]
    CharacteristicTwo,
    #[error("lift does not project to the given L1 element")]
    LiftMismatch,
    #[error("group model: {0}")]
    BadModel(String),
    #[error("cochain shape mismatch: {0}")]
    Shape(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("linear system has no solution")]
    Unsolvable,
}
