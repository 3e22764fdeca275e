use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KiteError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("element does not conform to shape: {0}")]
    ShapeMismatch(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("ambiguous chained division at {pos}; add parentheses")]
    AmbiguousDivision { pos: usize },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("evaluation budget exceeded: {needed} evaluations needed, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}
