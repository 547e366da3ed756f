use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("alpha must lie in (0, 1], got {0}")]
    InvalidAlpha(String),
    #[error("join tiebreak must be Zero or Pos")]
    InvalidTiebreak,
    #[error("coordinate {index} = {value} lies outside the box [-alpha, 1]")]
    OutOfBox { index: usize, value: String },
    #[error("3^{arity} points exceeds the enumeration cap of {cap}")]
    ArityCapExceeded { arity: usize, cap: usize },
    #[error("no alpha-bisubmodular table found after {draws} draws")]
    RejectionBudgetExhausted { draws: usize },
    #[error("invalid labeling character {0:?}")]
    InvalidLabel(char),
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
    #[error("invalid scope: {0}")]
    InvalidScope(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("non-finite value in iteration {0}")]
    NonFinite(usize),
}
