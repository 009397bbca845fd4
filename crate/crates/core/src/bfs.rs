//! Breadth-first generation over subsets of the instance.
//!
//! Subsets are bitmasks over pool positions. The values a subset can
//! produce are built from every split of the subset into two non-empty
//! halves, combining each value of one half with each value of the other.
//! Subsets are processed in increasing size, so both halves are ready when
//! a subset is reached. Values of the full subset are marked but never
//! stored, since nothing reuses them.

use crate::arith::{combine, BinOp};
use crate::error::Error;
use crate::pool::{Pool, MAX_POOL};
use crate::report::{SolveReport, TargetRange};
use crate::scalar::Scalar;
use std::collections::BTreeSet;

pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

/// For each subset mask, the unordered splits `(sub, complement)` with
/// `sub < complement`, smaller halves first.
#[derive(Debug, Clone)]
pub struct DecompositionTable {
    n: usize,
    pairs: Vec<Vec<(u32, u32)>>,
    order: Vec<u32>,
}

impl DecompositionTable {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Splits of `mask`; empty for singletons.
    pub fn pairs(&self, mask: u32) -> &[(u32, u32)] {
        &self.pairs[mask as usize]
    }

    /// All non-empty masks in increasing popcount, then increasing value.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.n) - 1
    }
}

pub fn build_decomposition(n: usize) -> Result<DecompositionTable, Error> {
    if !(1..=MAX_POOL).contains(&n) {
        return Err(Error::PoolSize(n));
    }
    let full = (1u32 << n) - 1;
    let mut pairs = vec![Vec::new(); full as usize + 1];
    for mask in 1..=full {
        let list = &mut pairs[mask as usize];
        // walk proper non-empty submasks
        let mut sub = (mask - 1) & mask;
        while sub > 0 {
            let comp = mask ^ sub;
            if sub < comp {
                list.push((sub, comp));
            }
            sub = (sub - 1) & mask;
        }
        list.sort_by_key(|&(s, c)| (s.count_ones().min(c.count_ones()), s, c));
    }
    let mut order: Vec<u32> = (1..=full).collect();
    order.sort_by_key(|&m| (m.count_ones(), m));
    Ok(DecompositionTable { n, pairs, order })
}

/// Upper bound on the values generated by a `p`-element subset:
/// `4^(p-1) * prod_{i=1}^{p-1} (2i - 1)`.
pub fn subset_generation_bound(p: u32) -> Result<u128, Error> {
    if !(1..=10).contains(&p) {
        return Err(Error::Domain {
            what: "subset size",
            value: p as u64,
        });
    }
    let odd: u128 = (1..p as u128).map(|i| 2 * i - 1).product();
    Ok(4u128.pow(p - 1) * odd)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Storage {
    /// Plain arrays, duplicates kept.
    Arrays,
    /// Ordered sets, duplicates dropped on insertion.
    Sets,
}

#[derive(Debug, Clone, Copy)]
pub struct BfsSolver {
    pub storage: Storage,
    /// Byte ceiling on stored values for the array variant.
    pub memory_budget: u64,
}

impl BfsSolver {
    pub fn new(storage: Storage) -> Self {
        BfsSolver {
            storage,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }

    pub fn with_budget(mut self, bytes: u64) -> Self {
        self.memory_budget = bytes;
        self
    }

    /// `nodes_visited` counts generated values before deduplication, one
    /// per singleton plus every admissible combination.
    pub fn solve<T: Scalar>(
        &self,
        instance: &Pool<T>,
        range: TargetRange,
    ) -> Result<SolveReport<T>, Error> {
        let table = build_decomposition(instance.len())?;
        self.solve_with_table(instance, range, &table)
    }

    pub fn solve_with_table<T: Scalar>(
        &self,
        instance: &Pool<T>,
        range: TargetRange,
        table: &DecompositionTable,
    ) -> Result<SolveReport<T>, Error> {
        assert_eq!(
            table.size(),
            instance.len(),
            "table built for another pool size"
        );
        let values = instance.as_slice();
        let full = table.full_mask();
        let mut report = SolveReport::empty(instance.clone(), range, false);
        let mut generated: Vec<Vec<T>> = vec![Vec::new(); full as usize + 1];
        let elem = std::mem::size_of::<T>() as u64;
        let mut used_bytes = 0u64;
        let mut nodes = 0u64;

        for &mask in table.order() {
            let p = mask.count_ones();
            if p == 1 {
                let v = values[mask.trailing_zeros() as usize];
                report.mark(v.widen(), 0);
                nodes += 1;
                if mask != full {
                    generated[mask as usize] = vec![v];
                    used_bytes += elem;
                }
                continue;
            }
            let ops = (p - 1) as u8;
            let store = mask != full;
            match self.storage {
                Storage::Arrays => {
                    let bound = subset_generation_bound(p)?;
                    let limit = self.memory_budget.saturating_sub(used_bytes) / elem;
                    let mut out: Vec<T> = if store {
                        Vec::with_capacity(bound.min(1 << 16).min(limit as u128) as usize)
                    } else {
                        Vec::new()
                    };
                    for &(s, c) in table.pairs(mask) {
                        for &x in &generated[s as usize] {
                            for &y in &generated[c as usize] {
                                let (a, b) = if x >= y { (x, y) } else { (y, x) };
                                for op in BinOp::ALL {
                                    let Some(r) = combine(a, b, op) else { continue };
                                    nodes += 1;
                                    report.mark(r.widen(), ops);
                                    if store {
                                        if out.len() as u64 >= limit {
                                            return Err(Error::MemoryBudgetExceeded { mask });
                                        }
                                        out.push(r);
                                    }
                                }
                            }
                        }
                    }
                    used_bytes += out.len() as u64 * elem;
                    generated[mask as usize] = out;
                }
                Storage::Sets => {
                    let mut out = BTreeSet::new();
                    for &(s, c) in table.pairs(mask) {
                        for &x in &generated[s as usize] {
                            for &y in &generated[c as usize] {
                                let (a, b) = if x >= y { (x, y) } else { (y, x) };
                                for op in BinOp::ALL {
                                    let Some(r) = combine(a, b, op) else { continue };
                                    nodes += 1;
                                    report.mark(r.widen(), ops);
                                    if store {
                                        out.insert(r);
                                    }
                                }
                            }
                        }
                    }
                    generated[mask as usize] = out.into_iter().collect();
                }
            }
        }
        report.nodes_visited = nodes;
        Ok(report)
    }
}

/// Breadth-first solve with the default memory budget.
pub fn solve_bfs<T: Scalar>(
    instance: &Pool<T>,
    range: TargetRange,
    storage: Storage,
) -> Result<SolveReport<T>, Error> {
    BfsSolver::new(storage).solve(instance, range)
}

/// Values generated by every stored subset, for inspection and tests.
/// The full mask is included here.
pub fn generated_sets<T: Scalar>(instance: &Pool<T>) -> Result<Vec<BTreeSet<T>>, Error> {
    let table = build_decomposition(instance.len())?;
    let values = instance.as_slice();
    let full = table.full_mask();
    let mut sets = vec![BTreeSet::new(); full as usize + 1];
    for &mask in table.order() {
        if mask.count_ones() == 1 {
            sets[mask as usize].insert(values[mask.trailing_zeros() as usize]);
            continue;
        }
        let mut out = BTreeSet::new();
        for &(s, c) in table.pairs(mask) {
            for &x in &sets[s as usize] {
                for &y in &sets[c as usize] {
                    let (a, b) = if x >= y { (x, y) } else { (y, x) };
                    out.extend(BinOp::ALL.iter().filter_map(|&op| combine(a, b, op)));
                }
            }
        }
        sets[mask as usize] = out;
    }
    Ok(sets)
}
