//! Exhaustive solvers and game statistics for the Countdown numbers round.

pub mod arith;
pub mod backward;
pub mod bench;
pub mod bfs;
pub mod canon;
pub mod database;
pub mod dfs;
pub mod engine;
pub mod enumeration;
pub mod error;
pub mod hashing;
pub mod parallel;
pub mod pool;
pub mod report;
pub mod scalar;
pub mod solution;
pub mod square;
pub mod stats;

pub use arith::{canonical_pairs, combine, evaluate, BinOp};
pub use engine::{Algorithm, Engine};
pub use error::Error;
pub use pool::Pool;
pub use report::{SolveReport, TargetRange, UNSOLVED};
pub use scalar::Scalar;
pub use solution::{replay, ReplayError, Solution, Step};

/// Value type of the standard game: 63-bit positive integers.
pub type Value = u64;
