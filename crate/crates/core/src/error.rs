use thiserror::Error;

/// Errors raised by the solvers and generators in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("strings have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {symbol:?} is not in the alphabet")]
    UnknownSymbol { symbol: char },

    #[error("probe {index} has length {found}, expected {expected}")]
    ProbeLength {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("placement is not a permutation: {0}")]
    InvalidPlacement(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An exact search would visit more states than it is allowed to.
    #[error("search space of {required} states exceeds the budget of {budget}")]
    BudgetExceeded { required: String, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
