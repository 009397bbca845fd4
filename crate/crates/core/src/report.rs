use crate::error::Error;
use crate::pool::Pool;
use crate::scalar::Scalar;
use crate::solution::Solution;
use std::fmt;

/// Sentinel stored in `min_ops` for targets that were not reached.
pub const UNSOLVED: u8 = 255;

/// Inclusive range of targets a solver reports on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TargetRange {
    pub lo: u64,
    pub hi: u64,
}

impl TargetRange {
    /// The standard game, 101 to 999.
    pub const STANDARD: TargetRange = TargetRange { lo: 101, hi: 999 };

    pub fn new(lo: u64, hi: u64) -> Result<Self, Error> {
        if lo == 0 || lo > hi {
            return Err(Error::BadRange { lo, hi });
        }
        Ok(TargetRange { lo, hi })
    }

    pub fn single(target: u64) -> Result<Self, Error> {
        TargetRange::new(target, target)
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn contains(&self, t: u64) -> bool {
        t >= self.lo && t <= self.hi
    }

    #[inline]
    pub fn index(&self, t: u64) -> Option<usize> {
        self.contains(t).then(|| (t - self.lo) as usize)
    }

    pub fn targets(&self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

impl Default for TargetRange {
    fn default() -> Self {
        TargetRange::STANDARD
    }
}

impl fmt::Display for TargetRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

/// What one solver run learned about an instance over a target range.
#[derive(Debug, Clone)]
pub struct SolveReport<T: Scalar = u64> {
    pub instance: Pool<T>,
    pub range: TargetRange,
    /// Fewest operations reaching each target, [`UNSOLVED`] otherwise.
    pub min_ops: Vec<u8>,
    /// One shortest solution per target, when the run recorded them.
    pub best: Option<Vec<Option<Solution<T>>>>,
    /// Attempted combinations (see the solver for exact accounting).
    pub nodes_visited: u64,
}

impl<T: Scalar> SolveReport<T> {
    pub(crate) fn empty(instance: Pool<T>, range: TargetRange, record: bool) -> Self {
        let len = range.len();
        SolveReport {
            instance,
            range,
            min_ops: vec![UNSOLVED; len],
            best: record.then(|| vec![None; len]),
            nodes_visited: 0,
        }
    }

    pub fn solved(&self, target: u64) -> bool {
        self.min_ops_for(target).is_some()
    }

    pub fn min_ops_for(&self, target: u64) -> Option<u8> {
        let i = self.range.index(target)?;
        let ops = self.min_ops[i];
        (ops != UNSOLVED).then_some(ops)
    }

    pub fn solution(&self, target: u64) -> Option<&Solution<T>> {
        let i = self.range.index(target)?;
        self.best.as_ref()?[i].as_ref()
    }

    pub fn solved_count(&self) -> usize {
        self.min_ops.iter().filter(|&&o| o != UNSOLVED).count()
    }

    pub fn all_solved(&self) -> bool {
        self.min_ops.iter().all(|&o| o != UNSOLVED)
    }

    /// Solved flags as a packed bitset, one bit per target from `lo`.
    pub fn solved_bits(&self) -> Vec<u64> {
        let mut bits = vec![0u64; self.range.len().div_ceil(64)];
        for (i, &o) in self.min_ops.iter().enumerate() {
            if o != UNSOLVED {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        bits
    }

    /// Nearest solved target in range and its distance; ties go to the
    /// smaller value.
    pub fn nearest(&self, target: u64) -> Option<(u64, u64)> {
        nearest_solved(&self.min_ops, self.range, target)
    }

    /// Records that `value` was reached after `ops` operations. Returns
    /// true when this improved the stored count.
    #[inline]
    pub(crate) fn mark(&mut self, value: u128, ops: u8) -> bool {
        if value < self.range.lo as u128 || value > self.range.hi as u128 {
            return false;
        }
        let slot = &mut self.min_ops[(value as u64 - self.range.lo) as usize];
        if ops < *slot {
            *slot = ops;
            true
        } else {
            false
        }
    }

    pub(crate) fn store(&mut self, value: u128, solution: Solution<T>) {
        if let Some(best) = self.best.as_mut() {
            best[(value as u64 - self.range.lo) as usize] = Some(solution);
        }
    }
}

/// Nearest solved value to `target` within `range`, as `(value, distance)`.
pub fn nearest_solved(min_ops: &[u8], range: TargetRange, target: u64) -> Option<(u64, u64)> {
    let span = range.hi - range.lo;
    for d in 0..=span + target.abs_diff(range.lo).max(target.abs_diff(range.hi)) {
        if let Some(down) = target.checked_sub(d) {
            if let Some(i) = range.index(down) {
                if min_ops[i] != UNSOLVED {
                    return Some((down, d));
                }
            }
        }
        let up = target + d;
        if let Some(i) = range.index(up) {
            if min_ops[i] != UNSOLVED {
                return Some((up, d));
            }
        }
        if target.saturating_sub(d) < range.lo && target + d > range.hi {
            break;
        }
    }
    None
}
