//! Exhaustive depth-first search, with and without transposition cutting.
//!
//! The search picks every pair of pool values, applies each admissible
//! operation, puts the result back and recurses until one value remains.
//! Every value produced is marked with the depth it was produced at, so a
//! single run answers every target in the range.
//!
//! `nodes_visited` counts generated positions: every result put back into
//! the pool, at every level of the tree. The naive search applies no
//! pruning beyond exact positive arithmetic, which is the tree the
//! `n!(n-1)!(3/2)^(n-1)` to `n!(n-1)!2^(n-1)` bounds describe; the other
//! variants use the pruning rules of [`combine`].

use crate::arith::{combine, evaluate, BinOp};
use crate::error::Error;
use crate::hashing::{CollisionPolicy, Signature, TranspositionTable, DEFAULT_HASH_BITS};
use crate::pool::{Pool, MAX_POOL};
use crate::report::{SolveReport, TargetRange};
use crate::scalar::Scalar;
use crate::solution::{Solution, Step};

/// Counters from one run, beyond what the report carries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Pair and operation combinations tried.
    pub attempts: u64,
    /// Results put back into the pool, same as `SolveReport::nodes_visited`.
    pub generated: u64,
    /// Pools of two or more values that were expanded.
    pub expanded: u64,
    /// Expansions skipped because the pool had been searched already.
    pub cuts: u64,
    /// Signatures stored in the transposition table.
    pub stored: u64,
    pub initial_signature: u64,
    pub final_signature: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DfsSolver {
    hash: Option<(u32, CollisionPolicy)>,
    prune: bool,
    record: bool,
}

impl DfsSolver {
    /// No pruning rules and no transposition table.
    pub fn naive() -> Self {
        DfsSolver {
            hash: None,
            prune: false,
            record: false,
        }
    }

    /// Pruning rules, no transposition table.
    pub fn pruned() -> Self {
        DfsSolver {
            hash: None,
            prune: true,
            record: false,
        }
    }

    pub fn hashed(bits: u32, policy: CollisionPolicy) -> Result<Self, Error> {
        if !(crate::hashing::MIN_HASH_BITS..=crate::hashing::MAX_HASH_BITS).contains(&bits) {
            return Err(Error::HashBits(bits));
        }
        Ok(DfsSolver {
            hash: Some((bits, policy)),
            prune: true,
            record: false,
        })
    }

    /// Keep one shortest solution per target in the report.
    pub fn recording(mut self, record: bool) -> Self {
        self.record = record;
        self
    }

    pub fn solve<T: Scalar>(&self, instance: &Pool<T>, range: TargetRange) -> SolveReport<T> {
        self.solve_with_stats(instance, range).0
    }

    pub fn solve_with_stats<T: Scalar>(
        &self,
        instance: &Pool<T>,
        range: TargetRange,
    ) -> (SolveReport<T>, SearchStats) {
        let mut report = SolveReport::empty(instance.clone(), range, self.record);
        for &v in instance.as_slice() {
            if report.mark(v.widen(), 0) {
                report.store(v.widen(), Solution::given(v));
            }
        }
        let table = self.hash.map(|(bits, policy)| {
            TranspositionTable::new(bits, policy).expect("validated in constructor")
        });
        let signature = Signature::of(instance.as_slice().iter().map(|v| v.widen()));
        let mut search = Search {
            report: &mut report,
            n: instance.len(),
            prune: self.prune,
            record: self.record,
            path: Vec::with_capacity(MAX_POOL),
            table,
            signature,
            stats: SearchStats {
                initial_signature: signature.0,
                ..SearchStats::default()
            },
        };
        if instance.len() >= 2 {
            search.stats.expanded += 1;
            if let Some(t) = search.table.as_mut() {
                t.check_insert(signature.0);
            }
            search.expand(instance.as_slice());
        }
        let mut stats = search.stats;
        stats.final_signature = search.signature.0;
        stats.stored = search.table.as_ref().map_or(0, |t| t.stored());
        report.nodes_visited = stats.generated;
        (report, stats)
    }
}

struct Search<'a, T: Scalar> {
    report: &'a mut SolveReport<T>,
    n: usize,
    prune: bool,
    record: bool,
    path: Vec<Step<T>>,
    table: Option<TranspositionTable>,
    signature: Signature,
    stats: SearchStats,
}

impl<T: Scalar> Search<'_, T> {
    fn expand(&mut self, pool: &[T]) {
        let k = pool.len();
        let depth = (self.n - k + 1) as u8;
        let mut next = [T::zero(); MAX_POOL];
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = if pool[i] >= pool[j] {
                    (pool[i], pool[j])
                } else {
                    (pool[j], pool[i])
                };
                let mut len = 0;
                for (m, &v) in pool.iter().enumerate() {
                    if m != i && m != j {
                        next[len] = v;
                        len += 1;
                    }
                }
                for op in BinOp::ALL {
                    self.stats.attempts += 1;
                    let result = if self.prune {
                        combine(a, b, op)
                    } else {
                        evaluate(a, b, op)
                    };
                    let Some(r) = result else { continue };
                    self.stats.generated += 1;
                    next[len] = r;
                    self.reach(
                        Step::Binary {
                            left: a,
                            op,
                            right: b,
                            result: r,
                        },
                        depth,
                    );
                    if len + 1 >= 2 {
                        self.descend(&next[..len + 1], a, b, r);
                    }
                    if self.record {
                        self.path.pop();
                    }
                }
            }
        }
    }

    #[inline]
    fn reach(&mut self, step: Step<T>, depth: u8) {
        let r = step.result();
        if self.record {
            self.path.push(step);
        }
        if self.report.mark(r.widen(), depth) && self.record {
            let solution = Solution {
                steps: self.path.clone(),
                result: r,
            };
            self.report.store(r.widen(), solution);
        }
    }

    #[inline]
    fn descend(&mut self, next: &[T], a: T, b: T, r: T) {
        let Some(table) = self.table.as_mut() else {
            self.stats.expanded += 1;
            self.expand(next);
            return;
        };
        let saved = self.signature;
        self.signature.remove(a.widen());
        self.signature.remove(b.widen());
        self.signature.insert(r.widen());
        // A pool is stored when first entered. The same multiset cannot
        // reappear below itself (every level removes one value), so a hit
        // always refers to a finished subtree at the same depth, which
        // already marked everything this one would, with equal op counts.
        if table.check_insert(self.signature.0) {
            self.stats.cuts += 1;
        } else {
            self.stats.expanded += 1;
            self.expand(next);
        }
        self.signature.remove(r.widen());
        self.signature.insert(a.widen());
        self.signature.insert(b.widen());
        debug_assert_eq!(self.signature, saved);
    }
}

/// Plain exhaustive depth-first search.
pub fn solve_dfs<T: Scalar>(instance: &Pool<T>, range: TargetRange) -> SolveReport<T> {
    DfsSolver::naive().solve(instance, range)
}

/// Depth-first search with a `2^bits` transposition table.
pub fn solve_dfs_hashed<T: Scalar>(
    instance: &Pool<T>,
    range: TargetRange,
    bits: u32,
    policy: CollisionPolicy,
) -> Result<SolveReport<T>, Error> {
    Ok(DfsSolver::hashed(bits, policy)?.solve(instance, range))
}

/// Hashed search with the default table size and the overwrite policy.
pub fn solve_dfs_default<T: Scalar>(instance: &Pool<T>, range: TargetRange) -> SolveReport<T> {
    DfsSolver::hashed(DEFAULT_HASH_BITS, CollisionPolicy::ReplaceAlways)
        .expect("default bits are valid")
        .solve(instance, range)
}
