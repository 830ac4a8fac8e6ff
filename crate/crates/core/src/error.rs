use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the excluded pattern is empty: every string contains it, so no solution exists")]
    EmptyPattern,

    #[error("input of length {len} exceeds the supported maximum of {max}")]
    InputTooLong { len: usize, max: usize },

    #[error("brute force needs min(m, n) <= {limit}, got {actual}")]
    InstanceTooLarge { limit: usize, actual: usize },

    #[error("table of {required} entries exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("invalid configuration: {0}")]
    Config(String),
}
