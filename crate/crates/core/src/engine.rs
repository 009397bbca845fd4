//! One name for every solver, so callers can pick an engine at run time.

use crate::backward::{backward_report, BackwardScheme};
use crate::bfs::{BfsSolver, Storage};
use crate::dfs::DfsSolver;
use crate::error::Error;
use crate::hashing::{CollisionPolicy, DEFAULT_HASH_BITS};
use crate::pool::Pool;
use crate::report::{SolveReport, TargetRange};
use crate::scalar::Scalar;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Depth-first, no pruning rules, no table.
    DfsNaive,
    /// Depth-first with pruning rules.
    Dfs,
    /// Pruned depth-first with an overwrite transposition table.
    DfsHash,
    /// Pruned depth-first keeping every signature per slot.
    DfsHashSet,
    BfsArray,
    BfsSet,
    /// Backward chaining, add-or-subtract then divide. Not exhaustive.
    Backward,
    /// Backward chaining with all four operations. Not exhaustive.
    BackwardAll,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::DfsNaive,
        Algorithm::Dfs,
        Algorithm::DfsHash,
        Algorithm::DfsHashSet,
        Algorithm::BfsArray,
        Algorithm::BfsSet,
        Algorithm::Backward,
        Algorithm::BackwardAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::DfsNaive => "dfs-naive",
            Algorithm::Dfs => "dfs",
            Algorithm::DfsHash => "dfs-hash",
            Algorithm::DfsHashSet => "dfs-hash-set",
            Algorithm::BfsArray => "bfs-array",
            Algorithm::BfsSet => "bfs-set",
            Algorithm::Backward => "backward",
            Algorithm::BackwardAll => "backward-all",
        }
    }

    /// True when `min_ops` is exact for every target.
    pub fn is_exhaustive(self) -> bool {
        !matches!(self, Algorithm::Backward | Algorithm::BackwardAll)
    }

    pub fn uses_hash(self) -> bool {
        matches!(self, Algorithm::DfsHash | Algorithm::DfsHashSet)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// A configured engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Engine {
    pub algorithm: Algorithm,
    pub hash_bits: u32,
    /// Keep one solution per target.
    pub record: bool,
}

impl Engine {
    pub fn new(algorithm: Algorithm) -> Self {
        Engine {
            algorithm,
            hash_bits: DEFAULT_HASH_BITS,
            record: false,
        }
    }

    pub fn hash_bits(mut self, bits: u32) -> Self {
        self.hash_bits = bits;
        self
    }

    pub fn recording(mut self, record: bool) -> Self {
        self.record = record;
        self
    }

    pub fn solve<T: Scalar>(
        &self,
        instance: &Pool<T>,
        range: TargetRange,
    ) -> Result<SolveReport<T>, Error> {
        let dfs = |solver: DfsSolver| Ok(solver.recording(self.record).solve(instance, range));
        let mut report = match self.algorithm {
            Algorithm::DfsNaive => dfs(DfsSolver::naive()),
            Algorithm::Dfs => dfs(DfsSolver::pruned()),
            Algorithm::DfsHash => dfs(DfsSolver::hashed(
                self.hash_bits,
                CollisionPolicy::ReplaceAlways,
            )?),
            Algorithm::DfsHashSet => dfs(DfsSolver::hashed(
                self.hash_bits,
                CollisionPolicy::SetPerSlot,
            )?),
            Algorithm::BfsArray => BfsSolver::new(Storage::Arrays).solve(instance, range),
            Algorithm::BfsSet => BfsSolver::new(Storage::Sets).solve(instance, range),
            Algorithm::Backward => Ok(backward_report(
                instance,
                range,
                BackwardScheme::Alternating,
            )),
            Algorithm::BackwardAll => Ok(backward_report(instance, range, BackwardScheme::AllOps)),
        }?;
        if !self.record {
            report.best = None;
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>(), Ok(a));
        }
        assert!("dfs-fast".parse::<Algorithm>().is_err());
    }

    #[test]
    fn exhaustive_engines_agree() {
        let p: Pool = Pool::from_u64s(&[1, 1, 4, 5, 6, 7]).unwrap();
        let reference = Engine::new(Algorithm::Dfs)
            .solve(&p, TargetRange::STANDARD)
            .unwrap();
        for a in Algorithm::ALL.into_iter().filter(|a| a.is_exhaustive()) {
            let r = Engine::new(a).solve(&p, TargetRange::STANDARD).unwrap();
            assert_eq!(r.min_ops, reference.min_ops, "{a}");
        }
        let back = Engine::new(Algorithm::BackwardAll)
            .solve(&p, TargetRange::STANDARD)
            .unwrap();
        assert!(back.solved_count() <= reference.solved_count());
    }
}
