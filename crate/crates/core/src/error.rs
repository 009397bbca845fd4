use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a pool holds between 1 and 10 numbers, got {0}")]
    PoolSize(usize),
    #[error("pool values must be positive and fit the value type")]
    ValueOutOfRange,
    #[error("invalid target range {lo}..={hi}")]
    BadRange { lo: u64, hi: u64 },
    #[error("hash table size must be between 8 and 28 bits, got {0}")]
    HashBits(u32),
    #[error("square bound must be between 1 and {max}, got {got}")]
    SquareBound { got: u64, max: u64 },
    #[error("array storage would exceed the memory budget at subset mask {mask:#b}")]
    MemoryBudgetExceeded { mask: u32 },
    #[error("sample of {requested} exceeds the {available} available sets")]
    SampleTooLarge { requested: u64, available: u128 },
    #[error("{what} is out of range: {value}")]
    Domain { what: &'static str, value: u64 },
    #[error("solution tree budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("database file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("database {path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
    #[error("worker failed on instance {index}: {reason}")]
    Worker { index: usize, reason: String },
}
