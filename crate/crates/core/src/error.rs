use thiserror::Error;

/// Failure categories shared by every module. The CLI maps each onto an exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("group too large for exhaustive work: order {order} exceeds bound {bound}")]
    TooLarge { order: u128, bound: u128 },
    #[error("reducible polynomial over Q")]
    Reducible,
    #[error("curve is singular")]
    Singular,
    #[error("prime {0} divides the index of the defining polynomial")]
    IndexDivisor(u64),
    #[error("prime {0} is ramified")]
    Ramified(u64),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("inconsistent ledger: {0}")]
    InconsistentLedger(String),
    #[error("logical failure: {0}")]
    Logic(String),
}

impl Error {
    /// 1 for logical failures, 2 for exhausted budgets, 3 for rejected input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget(_) | Error::TooLarge { .. } => 2,
            Error::Logic(_) => 1,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
