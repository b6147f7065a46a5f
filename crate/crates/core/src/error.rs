use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("invalid lottery: {0}")]
    InvalidLottery(String),

    #[error("agent index {agent} out of range (n = {n})")]
    AgentOutOfRange { agent: usize, n: usize },

    #[error("item index {item} out of range (m = {m})")]
    ItemOutOfRange { item: usize, m: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("agent {0} has an all-zero valuation row; normalization undefined")]
    Normalization(usize),

    #[error("enumeration size {required} exceeds the configured cap {cap}")]
    Scale { required: u128, cap: u64 },

    #[error("matrix is not bistochastic: {0}")]
    NotBistochastic(String),

    #[error("malformed linear program: {0}")]
    MalformedLp(String),

    #[error("inner algorithm violated its contract: {0}")]
    InnerContract(String),

    #[error("empty report space")]
    EmptySpace,

    #[error("{0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
